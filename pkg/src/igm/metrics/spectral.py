"""Normalized Laplacian spectrum, spectral gap and the mixing-lemma bound."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ..errors import CapacityError
from ..graph import GraphSnapshot

EIG_TOL = 1e-9
DENSE_EIG_MAX_NODES = 3000


@dataclass(frozen=True)
class SpectralResult:
    eigenvalues: tuple[float, ...]
    lambda_gap: float
    isolated_node_count: int


@dataclass(frozen=True)
class VolumeDecomposition:
    nodes: frozenset[int]
    vol_X: int
    vol_X_complement: int
    vol_G: int
    e_XX: int


def normalized_laplacian(g: GraphSnapshot) -> np.ndarray:
    """Dense I - D^-1/2 A D^-1/2, with isolated rows and columns left all zero."""
    n = g.n
    deg = np.array([len(nb) for nb in g.adjacency], dtype=float)
    inv_sqrt = np.zeros(n)
    nz = deg > 0
    inv_sqrt[nz] = 1.0 / np.sqrt(deg[nz])
    lap = np.zeros((n, n))
    for u, v in g.edges():
        w = -inv_sqrt[u] * inv_sqrt[v]
        lap[u, v] = w
        lap[v, u] = w
    lap[np.diag_indices(n)] = nz.astype(float)
    return lap


def spectral_gap(eigenvalues) -> float:
    """max(|lambda_1 - 1|, |lambda_{n-1} - 1|); 0 for a single node."""
    if len(eigenvalues) < 2:
        return 0.0
    return float(max(abs(eigenvalues[1] - 1.0), abs(eigenvalues[-1] - 1.0)))


def normalized_laplacian_spectrum(g: GraphSnapshot, max_nodes: int = DENSE_EIG_MAX_NODES) -> SpectralResult:
    if g.n > max_nodes:
        raise CapacityError(f"dense eigensolve limited to {max_nodes} nodes, graph has {g.n}")
    lap = normalized_laplacian(g)
    vals = np.linalg.eigvalsh(lap)
    lo, hi = vals.min(), vals.max()
    if lo < -EIG_TOL or hi > 2.0 + EIG_TOL:
        # eigvalsh error is ~n*eps*||L||; anything past this is a real defect
        if lo < -1e-6 or hi > 2.0 + 1e-6:
            raise ArithmeticError(f"normalized Laplacian spectrum outside [0, 2]: [{lo}, {hi}]")
    vals = np.clip(vals, 0.0, 2.0)
    vals[0] = 0.0
    isolated = sum(1 for nb in g.adjacency if not nb)
    return SpectralResult(tuple(float(x) for x in vals), spectral_gap(vals), isolated)


def volume_decomposition(g: GraphSnapshot, nodes: Iterable[int]) -> VolumeDecomposition:
    xs = frozenset(nodes)
    vol_x = sum(g.degree(v) for v in xs)
    vol_g = 2 * g.num_edges
    e_xx = sum(1 for v in xs for w in g.adjacency[v] if w in xs)
    return VolumeDecomposition(xs, vol_x, vol_g - vol_x, vol_g, e_xx)


def mixing_bound_exact(g: GraphSnapshot, nodes: Iterable[int]) -> tuple[int, int]:
    """Mixing-lemma lower bound on the spectral gap as an exact fraction (num, den).

    |e(X,X) - vol(X)^2/vol(G)| * vol(G) / (vol(X) vol(X^c))
    = |e(X,X) vol(G) - vol(X)^2| / (vol(X) vol(X^c)).
    """
    vd = volume_decomposition(g, nodes)
    if not vd.nodes or len(vd.nodes) == g.n:
        raise ValueError("X must be a non-empty proper subset of the nodes")
    if vd.vol_X == 0 or vd.vol_X_complement == 0:
        raise ValueError("mixing bound needs vol(X) > 0 and vol(complement) > 0")
    return abs(vd.e_XX * vd.vol_G - vd.vol_X ** 2), vd.vol_X * vd.vol_X_complement


def mixing_bound(g: GraphSnapshot, nodes: Iterable[int]) -> float:
    num, den = mixing_bound_exact(g, nodes)
    return num / den
