from __future__ import annotations

from typing import Sequence

from ..graph import GraphSnapshot


def densification_series(snapshots: Sequence[GraphSnapshot], k: int = 2):
    """(t, e_t / n_t, floor(n_{t-1} / k)) per snapshot; comparator is None at the first."""
    if not snapshots:
        raise ValueError("need at least one snapshot")
    out = []
    prev = None
    for g in snapshots:
        comparator = None if prev is None else prev.n // k
        out.append((g.level, g.num_edges / g.n, comparator))
        prev = g
    return out
