import csv
import json
import math

import pytest

from igm.cli import main
from igm.graph import read_graph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_edgelist(tmp_path, capsys):
    out = tmp_path / "g.txt"
    code, _, _ = run(capsys, "generate", "--seed", "C4", "--steps", "1", "--format", "edgelist", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n 10" and len(lines) == 17


def test_generate_k1_two_steps(capsys):
    code, out, _ = run(capsys, "generate", "--seed", "K1", "--steps", "2")
    assert code == 0 and out.splitlines() == ["n 4", "0 2", "1 3"]


def test_generate_over_budget(capsys):
    code, _, err = run(capsys, "generate", "--seed", "K1", "--steps", "5")
    assert code == 3 and "C(262,131)" in err


def test_generate_formats_and_all_levels(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert run(capsys, "generate", "--seed", "K1", "--steps", "3", "--format", "json", "--out", str(out),
               "--all-levels")[0] == 0
    levels = [read_graph(tmp_path / f"g.L{t}.json") for t in range(4)]
    assert [g.n for g in levels] == [1, 2, 4, 10]
    code, out, _ = run(capsys, "generate", "--seed", "C4", "--format", "dot")
    assert code == 0 and "graph G1 {" in out


def test_bad_flags_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["generate", "--steps", "x"])
    assert info.value.code == 2
    assert run(capsys, "generate", "--seed", "Q9")[0] == 2
    assert run(capsys, "generate", "--seed", "C4", "--k", "0")[0] == 2


def test_counts(capsys):
    code, out, _ = run(capsys, "counts", "--seed", "K1", "--steps", "5")
    rows = out.splitlines()
    c = math.comb(262, 131)
    assert code == 0 and rows[-1] == f"{262 + c} {1274 + 131 * c}"
    assert run(capsys, "counts", "--seed", "C4", "--steps", "1")[1].splitlines()[-1] == "10 16"
    assert run(capsys, "counts", "--seed", "C4", "--steps", "0")[1] == "4 4\n"


def test_metrics_all(tmp_path, capsys):
    path = tmp_path / "m.csv"
    code, out, _ = run(capsys, "metrics", "--seed", "C4", "--steps", "1", "--csv", str(path))
    assert code == 0
    values = dict(line.split("=") for line in out.splitlines())
    assert values["diam"] == "3" and values["clique"] == "3" and values["chrom"] == "3"
    assert values["dom"] == "3" and values["indep"] == "6"
    rows = list(csv.DictReader(path.open()))
    assert list(rows[0]) == ["metric", "value", "lower", "upper", "exact", "witness_size", "elapsed_ms"]
    assert {r["metric"] for r in rows} >= {"conn", "dom", "lambda_gap"}


def test_metrics_from_file(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("0 1\n2 3\n")
    code, out, _ = run(capsys, "metrics", "--in", str(path), "--select", "conn")
    assert code == 0 and out.strip() == "conn=false"
    assert run(capsys, "metrics", "--in", str(path), "--select", "bogus")[0] == 2


def test_metrics_spectrum_big(capsys):
    code, out, _ = run(capsys, "metrics", "--seed", "K1", "--steps", "4", "--select", "spectrum")
    values = dict(line.split("=") for line in out.splitlines())
    assert float(values["lambda_gap"]) >= 0.978
    assert float(values["mixing_bound"]) == pytest.approx(1260 / 1288)


def test_implicit_queries(capsys):
    assert run(capsys, "implicit", "--seed", "2K2", "dist", "c:0", "c:5")[1].strip() == "4"
    assert run(capsys, "implicit", "--seed", "C4", "counts")[1].strip() == "10 16"
    assert run(capsys, "implicit", "--seed", "C4", "adjacent", "o:0", "c:0")[1].strip() == "true"
    code, out, _ = run(capsys, "implicit", "--seed", "C4", "--steps", "1", "diameter")
    assert out.split()[:2] == ["3", "exact"]
    code, out, _ = run(capsys, "implicit", "--seed", "C4", "--steps", "1", "diameter", "--sample", "200",
                       "--rng-seed", "4")
    assert out.split()[1] == "lower-bound"


def test_implicit_big_degree(capsys):
    from igm import evolve, parse_seed

    g4 = evolve(parse_seed("K1"), 2, 4)[-1]
    code, out, _ = run(capsys, "implicit", "--seed", "K1", "--steps", "4", "degree", "o:0")
    assert code == 0 and int(out) == g4.degree(0) + math.comb(261, 130)


def test_implicit_out_of_range(capsys):
    code, _, err = run(capsys, "implicit", "--seed", "C4", "degree", "c:6")
    assert code == 2 and "[0, 6)" in err


def test_verify_exit_codes_and_plots(tmp_path, capsys):
    report = tmp_path / "r.json"
    plots = tmp_path / "plots"
    code, _, _ = run(capsys, "verify", "--seed", "C4", "--steps", "2", "--report", str(report),
                     "--plots", str(plots), "--sample-pairs", "1000")
    assert code == 0
    doc = json.loads(report.read_text())
    assert doc["schema_version"] == "1"
    assert {p.name for p in plots.iterdir()} == {"densification.csv", "spectral_gap.csv", "diameter.csv"}
    code, _, _ = run(capsys, "verify", "--seed", "K1", "--steps", "0", "--report", str(report))
    assert code == 0
    assert all(c["status"] == "not_applicable" for c in json.loads(report.read_text())["checks"])


def test_counts_past_counting_limit(capsys):
    code, out, err = run(capsys, "counts", "--seed", "K1", "--steps", "7")
    assert code == 3
    assert len(out.splitlines()) == 6 and "counting limit" in err
