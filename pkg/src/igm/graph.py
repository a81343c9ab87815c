"""Materialized generations: node provenance, snapshots, seeds and file I/O."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Union

from .errors import SeedParseError

__all__ = [
    "Original",
    "Clone",
    "NodeRef",
    "GraphSnapshot",
    "parse_seed",
    "named_seed",
    "read_edgelist",
    "parse_edgelist",
    "write_edgelist",
    "format_edgelist",
    "format_dot",
    "snapshot_to_json",
    "snapshot_from_json",
    "read_graph",
]


@dataclass(frozen=True)
class Original:
    index: int


@dataclass(frozen=True)
class Clone:
    level: int
    parent_subset: tuple[int, ...]


NodeRef = Union[Original, Clone]


@dataclass(frozen=True, eq=False)
class GraphSnapshot:
    """One generation G_t. Immutable; node ids are stable across evolution."""

    level: int
    adjacency: tuple[tuple[int, ...], ...]
    provenance: tuple[NodeRef, ...]

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @cached_property
    def num_edges(self) -> int:
        return sum(len(nb) for nb in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nb in enumerate(self.adjacency):
            for v in nb:
                if u < v:
                    yield u, v

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        """Open neighborhoods as int bitsets, indexed by node id."""
        masks = []
        for nb in self.adjacency:
            mask = 0
            for v in nb:
                mask |= 1 << v
            masks.append(mask)
        return tuple(masks)

    def newest_clones(self) -> range:
        """Ids of the clones added at this snapshot's level (empty at level 0)."""
        if self.level == 0:
            return range(0)
        lo = self.n
        while lo > 0:
            ref = self.provenance[lo - 1]
            if isinstance(ref, Clone) and ref.level == self.level:
                lo -= 1
            else:
                break
        return range(lo, self.n)

    @property
    def previous_order(self) -> int:
        """n_{t-1}: the number of nodes carried over from the previous level."""
        if self.level == 0:
            raise ValueError("level-0 snapshot has no previous level")
        return self.newest_clones().start

    def same_graph(self, other: "GraphSnapshot") -> bool:
        return self.adjacency == other.adjacency

    def validate(self) -> None:
        """Raise ``ValueError`` if the snapshot breaks its structural invariants."""
        n = self.n
        if len(self.provenance) != n:
            raise ValueError("provenance length differs from node count")
        for u, nb in enumerate(self.adjacency):
            if list(nb) != sorted(set(nb)):
                raise ValueError(f"neighbors of {u} not sorted/unique")
            for v in nb:
                if v == u:
                    raise ValueError(f"self-loop at {u}")
                if not 0 <= v < n:
                    raise ValueError(f"neighbor {v} of {u} out of range")
                if u not in self.adjacency[v]:
                    raise ValueError(f"asymmetric edge {u}-{v}")
        clones = self.newest_clones()
        masks = self.neighbor_masks
        clone_mask = sum(1 << c for c in clones)
        for c in clones:
            if masks[c] & clone_mask:
                raise ValueError(f"clone {c} adjacent to another clone of its level")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], level: int = 0) -> "GraphSnapshot":
        """Level-0 style snapshot with all-Original provenance."""
        if n < 1:
            raise ValueError("graph must have at least one node")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(
            level=level,
            adjacency=tuple(tuple(sorted(s)) for s in nbrs),
            provenance=tuple(Original(i) for i in range(n)),
        )


_SEED_RE = re.compile(r"^(\d*)([KCPE])(\d+)$")


def named_seed(family: str, n: int, copies: int = 1) -> GraphSnapshot:
    """Standard family K_n, C_n, P_n or E_n (empty), optionally as disjoint copies."""
    if n < 1:
        raise SeedParseError("seed graphs need n >= 1")
    if copies < 1:
        raise SeedParseError("copy count must be >= 1")
    if family == "K":
        base = [(u, v) for u in range(n) for v in range(u + 1, n)]
    elif family == "C":
        if n < 3:
            raise SeedParseError("cycle C_n needs n >= 3")
        base = [(i, (i + 1) % n) for i in range(n)]
    elif family == "P":
        base = [(i, i + 1) for i in range(n - 1)]
    elif family == "E":
        base = []
    else:
        raise SeedParseError(f"unknown family {family!r}")
    edges = [(u + c * n, v + c * n) for c in range(copies) for u, v in base]
    return GraphSnapshot.from_edges(n * copies, edges)


def parse_seed(spec: str | Path) -> GraphSnapshot:
    """Seed from a family name like ``"C4"``, ``"K1"``, ``"2K2"`` or an edge-list path."""
    if isinstance(spec, str):
        match = _SEED_RE.match(spec.strip())
        if match:
            copies, family, n = match.groups()
            return named_seed(family, int(n), int(copies) if copies else 1)
    path = Path(spec)
    if not path.is_file():
        raise SeedParseError(f"unknown seed {str(spec)!r}: not a family name (K/C/P/E<n>) or a file")
    return read_graph(path)


def parse_edgelist(text: str) -> GraphSnapshot:
    """Parse ``"u v"`` lines (0-based) with an optional ``"n <count>"`` header."""
    declared = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            if declared is not None or edges:
                raise SeedParseError("'n <count>' header must come first", lineno)
            if len(parts) != 2 or not parts[1].isdigit():
                raise SeedParseError(f"bad header {raw!r}", lineno)
            declared = int(parts[1])
            continue
        if len(parts) != 2:
            raise SeedParseError(f"expected 'u v', got {raw!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise SeedParseError(f"non-integer node id in {raw!r}", lineno) from None
        if u < 0 or v < 0:
            raise SeedParseError("node ids must be non-negative", lineno)
        if u == v:
            raise SeedParseError(f"self-loop at {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise SeedParseError(f"duplicate edge {key}", lineno)
        seen.add(key)
        edges.append(key)
    top = max((v for e in edges for v in e), default=-1) + 1
    n = declared if declared is not None else top
    if n < top:
        raise SeedParseError(f"header declares n={n} but ids reach {top - 1}")
    if n == 0:
        raise SeedParseError("graph has no nodes")
    return GraphSnapshot.from_edges(n, edges)


def read_edgelist(path: str | Path) -> GraphSnapshot:
    return parse_edgelist(Path(path).read_text())


def format_edgelist(g: GraphSnapshot) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def write_edgelist(g: GraphSnapshot, path: str | Path) -> None:
    Path(path).write_text(format_edgelist(g))


def format_dot(g: GraphSnapshot, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v, ref in enumerate(g.provenance):
        if isinstance(ref, Clone):
            parent = ",".join(map(str, ref.parent_subset))
            lines.append(f'  {v} [label="{v}" level={ref.level} parent="{parent}"];')
        else:
            lines.append(f'  {v} [label="{v}" level=0];')
    lines.extend(f"  {u} -- {v};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


def snapshot_to_json(g: GraphSnapshot) -> dict:
    nodes = []
    for v, ref in enumerate(g.provenance):
        if isinstance(ref, Clone):
            nodes.append({"id": v, "kind": "clone", "level": ref.level, "parent": list(ref.parent_subset)})
        else:
            nodes.append({"id": v, "kind": "original", "index": ref.index})
    return {
        "level": g.level,
        "n": g.n,
        "e": g.num_edges,
        "nodes": nodes,
        "edges": [list(e) for e in g.edges()],
    }


def snapshot_from_json(doc: dict) -> GraphSnapshot:
    n = int(doc["n"])
    base = GraphSnapshot.from_edges(n, [tuple(e) for e in doc["edges"]])
    prov: list[NodeRef] = []
    for node in doc["nodes"]:
        if node["kind"] == "clone":
            prov.append(Clone(int(node["level"]), tuple(node["parent"])))
        else:
            prov.append(Original(int(node["index"])))
    if len(prov) != n:
        raise SeedParseError("node list length differs from n")
    return GraphSnapshot(level=int(doc["level"]), adjacency=base.adjacency, provenance=tuple(prov))


def read_graph(path: str | Path) -> GraphSnapshot:
    """Read an edge list, or a JSON export (detected by ``.json`` suffix)."""
    path = Path(path)
    if path.suffix == ".json":
        try:
            return snapshot_from_json(json.loads(path.read_text()))
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise SeedParseError(f"malformed graph JSON: {exc}") from None
    return read_edgelist(path)
