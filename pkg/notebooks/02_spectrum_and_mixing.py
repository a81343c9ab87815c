"""
Spectral gap and the mixing bound
=================================

The newest clones form an independent set.  The edge-count discrepancy of
that set gives an exact rational lower bound on the spectral gap of the
normalized Laplacian, which we compare against a dense eigensolve.
"""

# %%
from fractions import Fraction

import numpy as np

from igm import evolve, parse_seed
from igm import metrics

levels = evolve(parse_seed("C4"), 2, 2)

# %%
for g in levels[1:]:
    clones = g.newest_clones()
    num, den = metrics.mixing_bound_exact(g, clones)
    num, den = Fraction(num, den).numerator, Fraction(num, den).denominator
    res = metrics.normalized_laplacian_spectrum(g)
    print(f"level {g.level}: n={g.n}  bound={num}/{den}={num/den:.5f}  gap={res.lambda_gap:.5f}")

# %% [markdown]
# Sanity checks on the spectrum: eigenvalues sum to the number of
# non-isolated nodes, and the multiplicity of 0 counts components.

# %%
g = levels[2]
vals = np.asarray(metrics.normalized_laplacian_spectrum(g).eigenvalues)
print(np.sum(vals), g.n, np.sum(vals < 1e-8), len(metrics.connected_components(g)))

# %% [markdown]
# Edges per node against half the previous order.

# %%
for level, ratio, half in metrics.densification_series(levels):
    print(level, round(ratio, 3), half)
