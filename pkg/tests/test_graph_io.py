import json

import pytest

from igm import evolve, parse_seed
from igm.errors import SeedParseError
from igm.graph import (
    Clone,
    GraphSnapshot,
    Original,
    format_dot,
    format_edgelist,
    parse_edgelist,
    read_graph,
    snapshot_to_json,
)


def edge_set(g):
    return set(g.edges())


def test_c4_seed():
    g = parse_seed("C4")
    assert (g.n, g.num_edges) == (4, 4)
    assert edge_set(g) == {(0, 1), (1, 2), (2, 3), (0, 3)}
    assert all(isinstance(p, Original) for p in g.provenance)


def test_k1_seed():
    g = parse_seed("K1")
    assert (g.n, g.num_edges) == (1, 0)


@pytest.mark.parametrize("spec,n,e", [("K5", 5, 10), ("P1", 1, 0), ("P5", 5, 4), ("E3", 3, 0), ("2K2", 4, 2), ("C6", 6, 6)])
def test_named_families(spec, n, e):
    g = parse_seed(spec)
    g.validate()
    assert (g.n, g.num_edges) == (n, e)


@pytest.mark.parametrize("spec", ["K0", "C2", "X4", "nonexistent-file.txt"])
def test_bad_seed_specs(spec):
    with pytest.raises(SeedParseError):
        parse_seed(spec)


def test_edgelist_file(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("0 1\n1 2")
    g = parse_seed(str(path))
    assert g.n == 3 and edge_set(g) == {(0, 1), (1, 2)}


def test_edgelist_header_declares_isolated_nodes():
    g = parse_edgelist("n 5\n0 1\n")
    assert g.n == 5 and g.num_edges == 1


@pytest.mark.parametrize("text,line", [("0 1\n1 x\n", 2), ("0 1\n\n2 2\n", 3), ("0 1\n1 0\n", 2),
                                       ("0 1 2\n", 1), ("0 1\nn 4\n", 2)])
def test_edgelist_errors_report_line(text, line):
    with pytest.raises(SeedParseError) as info:
        parse_edgelist(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_empty_edgelist_rejected():
    with pytest.raises(SeedParseError):
        parse_edgelist("# nothing\n")


def test_header_smaller_than_ids_rejected():
    with pytest.raises(SeedParseError):
        parse_edgelist("n 2\n0 5\n")


def test_edgelist_roundtrip_keeps_ids(tmp_path, c4_levels):
    for g in c4_levels[:2]:
        path = tmp_path / "out.txt"
        path.write_text(format_edgelist(g))
        back = read_graph(path)
        assert back.adjacency == g.adjacency


def test_edgelist_header_first_line(c4_levels):
    text = format_edgelist(c4_levels[1])
    lines = text.splitlines()
    assert lines[0] == "n 10"
    assert len(lines) == 17


def test_json_roundtrip_keeps_provenance(tmp_path, k1_levels):
    g = k1_levels[3]
    path = tmp_path / "g.json"
    path.write_text(json.dumps(snapshot_to_json(g)))
    back = read_graph(path)
    assert back.adjacency == g.adjacency
    assert back.provenance == g.provenance
    assert back.level == 3


def test_dot_annotates_clones(c4_levels):
    dot = format_dot(c4_levels[1])
    assert dot.startswith("graph G {")
    assert 'parent="0,1"' in dot
    assert dot.count(" -- ") == 16


def test_validate_catches_asymmetry():
    g = GraphSnapshot(0, ((1,), ()), (Original(0), Original(1)))
    with pytest.raises(ValueError):
        g.validate()


def test_validate_catches_adjacent_clones():
    g = GraphSnapshot(1, ((1, 2), (0, 2), (0, 1)), (Original(0), Clone(1, (0,)), Clone(1, (0,))))
    with pytest.raises(ValueError):
        g.validate()
