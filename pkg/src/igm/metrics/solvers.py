"""Exact clique, independence, chromatic and domination numbers.

All solvers work on int bitsets and honour a wall-clock budget. When the
budget runs out they return the best bounds found instead of raising, so a
``ParamResult`` is exact only when ``lower == upper``. Ties are broken by
lowest node id, which keeps witnesses deterministic.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from ..graph import GraphSnapshot

DEFAULT_TIME_BUDGET = 60.0


@dataclass(frozen=True)
class ParamResult:
    name: str
    lower: int
    upper: int
    witness: tuple[int, ...]
    elapsed_ms: float

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int | None:
        return self.lower if self.exact else None


class _Timeout(Exception):
    pass


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# --- maximum clique -------------------------------------------------------

def _max_clique(masks: list[int], deadline: float) -> tuple[list[int], int]:
    """Branch and bound with greedy-coloring bounds (MCQ style).

    ``masks`` must already be in the preferred vertex order. Returns the best
    clique found and an upper bound on the clique number.
    """
    n = len(masks)
    if n == 0:
        return [], 0

    best: list[int] = []
    for v in range(n):  # greedy start
        if all(masks[v] >> u & 1 for u in best):
            best.append(v)
    best = list(best)

    def color_sort(p: int) -> list[tuple[int, int]]:
        order = []
        color = 0
        uncolored = p
        while uncolored:
            color += 1
            q = uncolored
            while q:
                low = q & -q
                v = low.bit_length() - 1
                uncolored ^= low
                q ^= low
                q &= ~masks[v]
                order.append((v, color))
        return order

    state = {"best": best, "calls": 0}

    def expand(r: list[int], p: int) -> None:
        state["calls"] += 1
        if state["calls"] & 255 == 0 and time.monotonic() > deadline:
            raise _Timeout
        for v, c in reversed(color_sort(p)):
            if len(r) + c <= len(state["best"]):
                return
            r.append(v)
            newp = p & masks[v]
            if newp:
                expand(r, newp)
            elif len(r) > len(state["best"]):
                state["best"] = list(r)
            r.pop()
            p &= ~(1 << v)

    full = (1 << n) - 1
    root = color_sort(full)
    upper = root[-1][1] if root else 0
    upper_here = upper
    r: list[int] = []
    p = full
    try:
        for v, c in reversed(root):
            if len(state["best"]) >= c:
                break
            upper_here = c
            r.append(v)
            newp = p & masks[v]
            if newp:
                expand(r, newp)
            elif len(r) > len(state["best"]):
                state["best"] = list(r)
            r.pop()
            p &= ~(1 << v)
        upper = len(state["best"])
    except _Timeout:
        upper = max(len(state["best"]), upper_here)
    return state["best"], upper


def _clique_on_masks(name: str, masks: list[int], time_budget: float) -> ParamResult:
    start = time.monotonic()
    n = len(masks)
    order = sorted(range(n), key=lambda v: (-masks[v].bit_count(), v))
    pos = {v: i for i, v in enumerate(order)}
    relabeled = []
    for v in order:
        relabeled.append(sum(1 << pos[u] for u in _bits(masks[v])))
    clique, upper = _max_clique(relabeled, start + time_budget)
    witness = tuple(sorted(order[i] for i in clique))
    return ParamResult(name, len(witness), upper, witness, (time.monotonic() - start) * 1000)


def clique_number(g: GraphSnapshot, time_budget: float = DEFAULT_TIME_BUDGET) -> ParamResult:
    return _clique_on_masks("clique", list(g.neighbor_masks), time_budget)


def independence_number(g: GraphSnapshot, time_budget: float = DEFAULT_TIME_BUDGET) -> ParamResult:
    """Maximum clique of the complement graph."""
    full = (1 << g.n) - 1
    comp = [full & ~m & ~(1 << v) for v, m in enumerate(g.neighbor_masks)]
    return _clique_on_masks("independence", comp, time_budget)


# --- chromatic number -----------------------------------------------------

def dsatur_coloring(g: GraphSnapshot) -> list[int]:
    """Greedy DSatur coloring; colors are 0-based."""
    n = g.n
    colors = [-1] * n
    sat = [0] * n
    for _ in range(n):
        v = max((u for u in range(n) if colors[u] < 0),
                key=lambda u: (sat[u].bit_count(), len(g.adjacency[u]), -u))
        c = 0
        while sat[v] >> c & 1:
            c += 1
        colors[v] = c
        for w in g.adjacency[v]:
            sat[w] |= 1 << c
    return colors


def _k_coloring(g: GraphSnapshot, k: int, precolored: list[int], deadline: float) -> list[int] | None:
    """Backtracking DSatur search for a proper k-coloring; ``None`` if none exists."""
    n = g.n
    adj = g.adjacency
    colors = [-1] * n
    counts = [[0] * k for _ in range(n)]
    sat = [0] * n

    def assign(v, c):
        colors[v] = c
        for w in adj[v]:
            counts[w][c] += 1
            if counts[w][c] == 1:
                sat[w] |= 1 << c

    def unassign(v, c):
        colors[v] = -1
        for w in adj[v]:
            counts[w][c] -= 1
            if counts[w][c] == 0:
                sat[w] &= ~(1 << c)

    for c, v in enumerate(precolored):
        if c >= k:
            return None
        assign(v, c)
    used = len(precolored)
    calls = 0

    def solve(remaining: int, used: int) -> bool:
        nonlocal calls
        if remaining == 0:
            return True
        calls += 1
        if calls & 255 == 0 and time.monotonic() > deadline:
            raise _Timeout
        v = -1
        key = None
        for u in range(n):
            if colors[u] < 0:
                ku = (sat[u].bit_count(), len(adj[u]))
                if key is None or ku > key:
                    v, key = u, ku
        for c in range(min(k, used + 1)):
            if sat[v] >> c & 1:
                continue
            assign(v, c)
            if solve(remaining - 1, max(used, c + 1)):
                return True
            unassign(v, c)
        return False

    if solve(n - len(precolored), used):
        return colors
    return None


def chromatic_number(g: GraphSnapshot, time_budget: float = DEFAULT_TIME_BUDGET) -> ParamResult:
    """Exact chromatic number; witness is the color of each node."""
    start = time.monotonic()
    deadline = start + time_budget
    if g.n == 0:
        return ParamResult("chromatic", 0, 0, (), 0.0)
    clique = clique_number(g, time_budget / 2)
    best = dsatur_coloring(g)
    lower = clique.lower
    upper = max(best) + 1
    try:
        for k in range(lower, upper):
            found = _k_coloring(g, k, list(clique.witness), deadline)
            if found is None:
                lower = k + 1
            else:
                best, upper = found, k
                break
    except _Timeout:
        pass
    return ParamResult("chromatic", lower, upper, tuple(best), (time.monotonic() - start) * 1000)


def is_proper_coloring(g: GraphSnapshot, colors) -> bool:
    return all(colors[u] != colors[v] for u, v in g.edges())


# --- domination -----------------------------------------------------------

def is_dominating_set(g: GraphSnapshot, nodes) -> bool:
    chosen = set(nodes)
    return all(v in chosen or any(w in chosen for w in g.adjacency[v]) for v in range(g.n))


def greedy_dominating_set(g: GraphSnapshot) -> list[int]:
    closed = [m | 1 << v for v, m in enumerate(g.neighbor_masks)]
    undominated = (1 << g.n) - 1
    out = []
    while undominated:
        u = max(range(g.n), key=lambda x: ((closed[x] & undominated).bit_count(), -x))
        out.append(u)
        undominated &= ~closed[u]
    return sorted(out)


def domination_number(g: GraphSnapshot, time_budget: float = DEFAULT_TIME_BUDGET) -> ParamResult:
    """Minimum dominating set by branching on the hardest undominated node."""
    start = time.monotonic()
    deadline = start + time_budget
    n = g.n
    closed = [m | 1 << v for v, m in enumerate(g.neighbor_masks)]
    full = (1 << n) - 1
    best = greedy_dominating_set(g)
    max_closed = max(c.bit_count() for c in closed)
    root_lower = -(-n // max_closed)
    calls = 0

    def search(chosen: list[int], dominated: int, excluded: int) -> None:
        nonlocal best, calls
        if dominated == full:
            if len(chosen) < len(best):
                best = sorted(chosen)
            return
        if len(chosen) + 1 >= len(best):
            return
        calls += 1
        if calls & 63 == 0 and time.monotonic() > deadline:
            raise _Timeout
        undominated = full & ~dominated
        allowed = full & ~excluded
        maxcov = 0
        for u in _bits(allowed):
            cov = (closed[u] & undominated).bit_count()
            if cov > maxcov:
                maxcov = cov
        if maxcov == 0:
            return
        if len(chosen) - (-undominated.bit_count() // maxcov) >= len(best):
            return
        target, fewest = -1, n + 1
        for v in _bits(undominated):
            cnt = (closed[v] & allowed).bit_count()
            if cnt < fewest:
                target, fewest = v, cnt
                if cnt <= 1:
                    break
        if fewest == 0:
            return
        options = sorted(_bits(closed[target] & allowed),
                         key=lambda u: (-(closed[u] & undominated).bit_count(), u))
        for u in options:
            chosen.append(u)
            search(chosen, dominated | closed[u], excluded)
            chosen.pop()
            excluded |= 1 << u

    try:
        search([], 0, 0)
        lower = len(best)
    except _Timeout:
        lower = min(root_lower, len(best))
    return ParamResult("domination", lower, len(best), tuple(best), (time.monotonic() - start) * 1000)


def construct_dominating_set(g: GraphSnapshot, k: int = 2) -> list[int]:
    """(V(G_{t-1}) minus S) plus the clone over S, for S the colex-first subset.

    For k = 2 this has ceil(n_{t-1}/2) + 1 nodes. The set is checked before
    it is returned.
    """
    if g.level < 1:
        raise ValueError("construction needs a snapshot with at least one clone layer")
    n_prev = g.previous_order
    m = n_prev // k
    clone = n_prev  # colex rank 0 -> parent subset {0..m-1}
    parent = getattr(g.provenance[clone], "parent_subset", None)
    if parent != tuple(range(m)):
        raise ValueError(f"node {clone} is not the clone over {{0..{m - 1}}}; was the snapshot built with k={k}?")
    out = list(range(m, n_prev)) + [clone]
    if not is_dominating_set(g, out):
        raise RuntimeError("constructed set failed the domination check")
    return out
