"""Iterated global model: one step adds a clone for every floor(n/k)-subset."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .combinatorics import colex_subsets
from .errors import CapacityError
from .graph import Clone, GraphSnapshot

__all__ = ["DEFAULT_NODE_BUDGET", "ModelParams", "evolve_step", "evolve", "subset_size"]

DEFAULT_NODE_BUDGET = 100_000


@dataclass(frozen=True)
class ModelParams:
    seed: str
    k: int = 2

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")


def subset_size(n: int, k: int) -> int:
    if k < 1:
        raise ValueError("k must be >= 1")
    return n // k


def evolve_step(g: GraphSnapshot, k: int = 2, budget: int = DEFAULT_NODE_BUDGET) -> GraphSnapshot:
    """Materialize G_{t+1}.

    Clone with colex rank r over subset S gets id ``g.n + r`` and is joined
    to exactly S. m = 0 is legal and adds one isolated clone.
    """
    n = g.n
    m = subset_size(n, k)
    added = math.comb(n, m)
    if n + added > budget:
        raise CapacityError(
            f"level {g.level + 1} needs {n} + C({n},{m}) = {n + added} nodes, budget is {budget}"
        )
    level = g.level + 1
    adj = [list(nb) for nb in g.adjacency]
    prov = list(g.provenance)
    for r, subset in enumerate(colex_subsets(n, m)):
        cid = n + r
        for u in subset:
            adj[u].append(cid)
        adj.append(list(subset))
        prov.append(Clone(level, subset))
    return GraphSnapshot(level=level, adjacency=tuple(map(tuple, adj)), provenance=tuple(prov))


def evolve(g0: GraphSnapshot, k: int = 2, steps: int = 1, budget: int = DEFAULT_NODE_BUDGET) -> list[GraphSnapshot]:
    """Snapshots for levels 0..steps.

    If the budget trips, ``CapacityError.partial`` holds the levels built so far.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    out = [g0]
    for _ in range(steps):
        try:
            out.append(evolve_step(out[-1], k, budget))
        except CapacityError as exc:
            raise CapacityError(str(exc), partial=out) from None
    return out
