"""Exact big-integer counting and the colexicographic subset numbering.

Clones are addressed by the colex rank of their parent subset, so the
rank/unrank pair here is the bridge between materialized clone ids
(``n_prev + rank``) and the implicit layer's ``CloneRank`` nodes.
"""
from __future__ import annotations

import math
from typing import Iterator, Sequence

from .errors import CapacityError

__all__ = [
    "binomial",
    "colex_rank",
    "colex_unrank",
    "colex_subsets",
    "predicted_counts",
    "EXACT_COUNT_MAX_ORDER",
    "require_countable",
    "central_binomial_approx",
    "central_binomial_log10",
]


def binomial(n: int, m: int) -> int:
    """Exact C(n, m); raises ``ValueError`` unless 0 <= m <= n."""
    if n < 0 or m < 0 or m > n:
        raise ValueError(f"binomial requires 0 <= m <= n, got n={n}, m={m}")
    return math.comb(n, m)


def _check_subset(subset: Sequence[int], m: int) -> None:
    if len(subset) != m:
        raise ValueError(f"subset has {len(subset)} elements, expected {m}")
    prev = -1
    for x in subset:
        if x <= prev:
            raise ValueError(f"subset must be strictly increasing and non-negative: {list(subset)}")
        prev = x


def colex_rank(subset: Sequence[int], m: int | None = None) -> int:
    """Rank of a sorted m-subset in colex order: sum of C(s_i, i+1)."""
    if m is None:
        m = len(subset)
    _check_subset(subset, m)
    return sum(math.comb(c, i + 1) for i, c in enumerate(subset))


def colex_unrank(rank: int, m: int, n: int) -> tuple[int, ...]:
    """The m-subset of {0..n-1} whose colex rank is ``rank``."""
    if m < 0 or m > n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    total = math.comb(n, m)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} out of range [0, {total})")
    out = [0] * m
    if m == 0:
        return ()
    # Walk c downward keeping val == C(c, i); each update is one exact mul/div.
    c = n - 1
    i = m
    val = math.comb(c, i)
    while True:
        while val > rank:
            val = val * (c - i) // c
            c -= 1
        out[i - 1] = c
        rank -= val
        if i == 1:
            break
        val = val * i // c
        c -= 1
        i -= 1
    return tuple(out)


def colex_subsets(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """Yield every m-subset of {0..n-1} in colex order (rank 0 first)."""
    if m < 0 or m > n:
        return
    s = list(range(m)) + [n]
    while True:
        yield tuple(s[:m])
        j = 0
        while j < m and s[j] + 1 == s[j + 1]:
            j += 1
        if j >= m:
            return
        s[j] += 1
        s[:j] = range(j)


# C(n, n/2) has about 0.3 n decimal digits; past this order the next count
# would not fit the default int-to-str limit, and the level after it is
# beyond any exact arithmetic anyway.
EXACT_COUNT_MAX_ORDER = 10_000


def require_countable(n: int, level: int | None = None) -> None:
    """Raise CapacityError if C(n, m) for a base of order n is too big to count exactly."""
    if n > EXACT_COUNT_MAX_ORDER:
        where = "" if level is None else f"level {level}: "
        raise CapacityError(
            f"{where}predecessor order {n} exceeds the exact counting limit of {EXACT_COUNT_MAX_ORDER}"
        )


def predicted_counts(n0: int, e0: int, k: int, t: int) -> list[tuple[int, int]]:
    """Exact (n_i, e_i) for i = 0..t from the one-step recurrences.

    n_i = n_{i-1} + C(n_{i-1}, m) and e_i = e_{i-1} + m * C(n_{i-1}, m)
    with m = floor(n_{i-1} / k).  Raises CapacityError, with the levels
    counted so far in ``partial``, once a predecessor order passes
    ``EXACT_COUNT_MAX_ORDER``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if t < 0:
        raise ValueError("t must be >= 0")
    n, e = n0, e0
    out = [(n, e)]
    for level in range(1, t + 1):
        try:
            require_countable(n, level)
        except CapacityError as exc:
            exc.partial = out
            raise
        m = n // k
        added = math.comb(n, m)
        n, e = n + added, e + m * added
        out.append((n, e))
    return out


def central_binomial_log10(n: int) -> float:
    """log10 of 2^(2n) / sqrt(pi n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 2 * n * math.log10(2.0) - 0.5 * math.log10(math.pi * n)


def central_binomial_approx(n: int) -> float:
    """Stirling-type estimate 2^(2n) / sqrt(pi n) of C(2n, n).

    Computed in log space. Raises ``OverflowError`` when the value does not
    fit a double; use :func:`central_binomial_parts` there.
    """
    log10_val = central_binomial_log10(n)
    if log10_val > 308.0:
        raise OverflowError(f"estimate for n={n} exceeds double range; use central_binomial_parts")
    return 10.0 ** log10_val


def central_binomial_parts(n: int) -> tuple[float, int]:
    """Estimate as (mantissa, exponent) with value = mantissa * 10**exponent."""
    log10_val = central_binomial_log10(n)
    exponent = math.floor(log10_val)
    return 10.0 ** (log10_val - exponent), exponent


__all__.append("central_binomial_parts")
