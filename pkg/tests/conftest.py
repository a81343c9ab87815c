import pytest

from igm import evolve, parse_seed

CATALOG = ["K1", "K2", "K3", "K4", "K5", "P2", "P3", "P4", "P5", "C3", "C4", "C5", "C6", "2K2"]


@pytest.fixture(scope="session")
def k1_levels():
    return evolve(parse_seed("K1"), 2, 4)


@pytest.fixture(scope="session")
def c4_levels():
    return evolve(parse_seed("C4"), 2, 2)


_ACCEPTANCE: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    label = marker.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _ACCEPTANCE[label] = "PASS" if rep.passed else "FAIL"


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): exit criterion, reported in the summary")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[0])):
        terminalreporter.write_line(f"{_ACCEPTANCE[label]}  criterion {label}")
