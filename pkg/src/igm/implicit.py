"""Closed-form queries on G_{t+1} without building its clone population.

The layer over a materialized base G_t holds the base's n nodes plus one
clone per m-subset (m = floor(n/k)), addressed by colex rank. For m >= 2
every distance follows from base adjacency alone:

* old-old: 1 if base-adjacent, else 2 (some clone covers both);
* old u to clone S: 1 if u in S, 2 if u has a base neighbor in S, else 3;
* clone S to clone T: 2 if S and T meet, 3 if a base edge joins them, else 4.

For m <= 1 the layer is materialized instead (it is at most twice the base
size plus one).
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Union

from .combinatorics import colex_rank, colex_subsets, colex_unrank, require_countable
from .errors import CapacityError
from .graph import GraphSnapshot
from .metrics.connectivity import bfs_distances, is_biconnected, is_connected
from .metrics.connectivity import diameter as bfs_diameter
from .model import DEFAULT_NODE_BUDGET, evolve_step

__all__ = ["Old", "CloneRank", "LayerNode", "ImplicitLayer", "DiameterResult", "parse_layer_node",
           "DEFAULT_PAIR_BUDGET"]

DEFAULT_PAIR_BUDGET = 10 ** 7


@dataclass(frozen=True)
class Old:
    id: int

    def __str__(self):
        return f"o:{self.id}"


@dataclass(frozen=True)
class CloneRank:
    rank: int

    def __str__(self):
        return f"c:{self.rank}"


LayerNode = Union[Old, CloneRank]


def parse_layer_node(text: str) -> LayerNode:
    """``"o:<id>"`` or ``"c:<decimal rank>"``."""
    kind, _, num = text.partition(":")
    if kind not in ("o", "c") or not num.isdigit():
        raise ValueError(f"bad node {text!r}; expected o:<id> or c:<rank>")
    return Old(int(num)) if kind == "o" else CloneRank(int(num))


@dataclass(frozen=True)
class DiameterResult:
    value: int | None  # None: disconnected
    exact: bool
    method: str


class ImplicitLayer:
    def __init__(self, base: GraphSnapshot, k: int = 2, node_budget: int = DEFAULT_NODE_BUDGET):
        if k < 1:
            raise ValueError("k must be >= 1")
        require_countable(base.n, base.level + 1)
        self.base = base
        self.k = k
        self.n = base.n
        self.m = base.n // k
        self.clone_count = math.comb(self.n, self.m)
        self.node_budget = node_budget
        self._bfs_cache: dict[int, list[int]] = {}

    @property
    def level(self) -> int:
        return self.base.level + 1

    @property
    def node_count(self) -> int:
        return self.n + self.clone_count

    def counts(self) -> tuple[int, int]:
        """Exact (nodes, edges) of the layer."""
        return self.node_count, self.base.num_edges + self.m * self.clone_count

    # -- addressing --------------------------------------------------------

    def check(self, v: LayerNode) -> None:
        if isinstance(v, Old):
            if not 0 <= v.id < self.n:
                raise ValueError(f"old node {v.id} out of range [0, {self.n})")
        elif isinstance(v, CloneRank):
            if not 0 <= v.rank < self.clone_count:
                raise ValueError(f"clone rank {v.rank} out of range [0, {self.clone_count})")
        else:
            raise TypeError(f"not a layer node: {v!r}")

    def subset(self, v: CloneRank) -> tuple[int, ...]:
        self.check(v)
        return colex_unrank(v.rank, self.m, self.n)

    def clone_of(self, subset) -> CloneRank:
        return CloneRank(colex_rank(tuple(sorted(subset)), self.m))

    def _mask(self, v: CloneRank) -> int:
        mask = 0
        for u in self.subset(v):
            mask |= 1 << u
        return mask

    def node_id(self, v: LayerNode) -> int:
        """Id the node gets when the layer is materialized by ``evolve_step``."""
        self.check(v)
        return v.id if isinstance(v, Old) else self.n + v.rank

    # -- local queries -----------------------------------------------------

    def are_adjacent(self, a: LayerNode, b: LayerNode) -> bool:
        self.check(a)
        self.check(b)
        if a == b:
            raise ValueError("adjacency query needs two distinct nodes")
        if isinstance(a, Old) and isinstance(b, Old):
            return bool(self.base.neighbor_masks[a.id] >> b.id & 1)
        if isinstance(a, CloneRank) and isinstance(b, CloneRank):
            return False
        old, clone = (a, b) if isinstance(a, Old) else (b, a)
        return bool(self._mask(clone) >> old.id & 1)

    def degree(self, v: LayerNode) -> int:
        self.check(v)
        if isinstance(v, CloneRank):
            return self.m
        if self.m == 0:
            return self.base.degree(v.id)
        return self.base.degree(v.id) + math.comb(self.n - 1, self.m - 1)

    # -- distances ---------------------------------------------------------

    @cached_property
    def materialized(self) -> GraphSnapshot:
        return evolve_step(self.base, self.k, self.node_budget)

    def _bfs(self, src: int) -> list[int]:
        if src not in self._bfs_cache:
            self._bfs_cache[src] = bfs_distances(self.materialized, src)
        return self._bfs_cache[src]

    def distance(self, a: LayerNode, b: LayerNode) -> int | None:
        """Exact hop distance in the layer; ``None`` if unreachable."""
        self.check(a)
        self.check(b)
        if a == b:
            return 0
        if self.m <= 1:
            d = self._bfs(self.node_id(a))[self.node_id(b)]
            return None if d < 0 else d
        nbr = self.base.neighbor_masks
        if isinstance(a, Old) and isinstance(b, Old):
            return 1 if nbr[a.id] >> b.id & 1 else 2
        if isinstance(a, Old) or isinstance(b, Old):
            old, clone = (a, b) if isinstance(a, Old) else (b, a)
            s = self._mask(clone)
            if s >> old.id & 1:
                return 1
            return 2 if nbr[old.id] & s else 3
        return self._clone_clone(self._mask(a), self._mask(b))

    def _clone_clone(self, s: int, t: int) -> int:
        if s & t:
            return 2
        reach = 0
        nbr = self.base.neighbor_masks
        x = s
        while x:
            low = x & -x
            reach |= nbr[low.bit_length() - 1]
            x ^= low
        return 3 if reach & t else 4

    # -- sampling and diameter ---------------------------------------------

    def sample_nodes(self, count: int, seed: int) -> list[LayerNode]:
        """Uniform sample (with replacement) over all n + C(n, m) layer nodes.

        ``randrange`` draws big ranks by rejection over fixed-width random
        bits, so the result is exact-uniform and reproducible from ``seed``.
        """
        if count < 0:
            raise ValueError("count must be >= 0")
        rng = random.Random(seed)
        total = self.node_count
        out: list[LayerNode] = []
        for _ in range(count):
            x = rng.randrange(total)
            out.append(Old(x) if x < self.n else CloneRank(x - self.n))
        return out

    def sample_pairs(self, pairs: int, seed: int) -> list[tuple[LayerNode, LayerNode]]:
        nodes = self.sample_nodes(2 * pairs, seed)
        return [(nodes[2 * i], nodes[2 * i + 1]) for i in range(pairs)]

    def diameter(self, mode: str = "exact", pairs: int = 10_000, seed: int = 0,
                 pair_budget: int = DEFAULT_PAIR_BUDGET) -> DiameterResult:
        """Exact diameter by category maxima, or a sampled lower bound."""
        if mode == "sampled":
            best = 0
            for a, b in self.sample_pairs(pairs, seed):
                d = self.distance(a, b)
                if d is None:
                    return DiameterResult(None, True, "sampled")
                best = max(best, d)
            return DiameterResult(best, False, "sampled")
        if mode != "exact":
            raise ValueError(f"unknown diameter mode {mode!r}")
        if self.m <= 1:
            return DiameterResult(bfs_diameter(self.materialized), True, "materialized")
        return self._exact_diameter(pair_budget)

    def _exact_diameter(self, pair_budget: int) -> DiameterResult:
        n, m = self.n, self.m
        nbr = self.base.neighbor_masks
        best = 0
        if n >= 2:
            complete = all(nbr[u].bit_count() == n - 1 for u in range(n))
            best = 1 if complete else 2
        # old-clone: some clone avoids u's closed neighborhood iff n - 1 - deg(u) >= m
        if any(n - 1 - self.base.degree(u) >= m for u in range(n)):
            best = max(best, 3)
        elif m < n:
            best = max(best, 2)
        else:
            best = max(best, 1)
        if self.clone_count >= 2:
            if 2 * m > n:
                cc, method = 2, "closed-form"
            else:
                cc, method = self._clone_clone_max(pair_budget)
            best = max(best, cc)
        else:
            method = "closed-form"
        return DiameterResult(best, True, method)

    def _clone_clone_max(self, pair_budget: int) -> tuple[int, str]:
        """3 or 4: whether two disjoint m-subsets exist with no edge between them.

        Such a pair leaves r = n - 2m nodes outside S and T, and every
        component of G - R then lies wholly in S or in T. So it suffices to
        try each r-set R and split the component sizes of G - R into two
        groups of m. There are C(n, 2m) leftover sets against C(n, m)^2 subset
        pairs, so this always beats a pair scan; for k = 2 (r <= 1) it is cheap.
        """
        n, m = self.n, self.m
        r = n - 2 * m
        if r == 0 and is_connected(self.base):
            return 3, "structural"
        if r == 1 and is_biconnected(self.base):
            return 3, "structural"
        leftovers = math.comb(n, r)
        if leftovers > pair_budget:
            raise CapacityError(
                f"exact clone-clone diameter needs C({n},{r}) = {leftovers} leftover-set checks, "
                f"over the budget {pair_budget}; use sampled mode"
            )
        return (4 if self._split_exists(r) else 3), "leftover-scan"

    def _split_exists(self, r: int) -> bool:
        base = self.base
        for leftover in itertools.combinations(range(self.n), r):
            removed = set(leftover)
            keep = [v for v in range(self.n) if v not in removed]
            sizes = _component_sizes(base, keep)
            if self.m in _subset_sums(sizes):
                return True
        return False

    def _pair_scan(self) -> int:
        """Reference clone-clone maximum by scanning all subset pairs (slow)."""
        masks = [sum(1 << u for u in s) for s in colex_subsets(self.n, self.m)]
        for i, s in enumerate(masks):
            for t in masks[i + 1:]:
                if not s & t and self._clone_clone(s, t) == 4:
                    return 4
        return 3  # only called with 2m <= n, so disjoint pairs exist


def _component_sizes(g: GraphSnapshot, keep: list[int]) -> list[int]:
    allowed = set(keep)
    seen: set[int] = set()
    sizes = []
    for s in keep:
        if s in seen:
            continue
        seen.add(s)
        stack, size = [s], 0
        while stack:
            u = stack.pop()
            size += 1
            for v in g.adjacency[u]:
                if v in allowed and v not in seen:
                    seen.add(v)
                    stack.append(v)
        sizes.append(size)
    return sizes


def _subset_sums(sizes: list[int]) -> set[int]:
    sums = {0}
    for s in sizes:
        sums |= {x + s for x in sums}
    return sums
