"""
Querying a layer that is never built
====================================

The next level over a 262-node graph has C(262, 131) clones.  Nodes are
addressed as ``o:<id>`` for old nodes and ``c:<rank>`` for clones, where
the rank numbers parent subsets in colex order.  Adjacency, degree and
distance all come from the base graph alone.
"""

# %%
from igm import CloneRank, ImplicitLayer, Old, evolve, parse_seed

base = evolve(parse_seed("K1"), 2, 4)[-1]
layer = ImplicitLayer(base)
n, e = layer.counts()
print(layer.level, len(str(n)), "digit order")

# %%
a, b = CloneRank(0), CloneRank(layer.clone_count - 1)
print(layer.subset(a)[:5], layer.subset(b)[:5])
print(layer.distance(a, b), layer.distance(Old(0), a), layer.degree(a))

# %% [markdown]
# Exact diameter uses a structural argument when it applies, and falls back
# to scanning small leftover sets otherwise.  Sampling is the cheap option.

# %%
print(layer.diameter("exact"))
print(layer.diameter("sampled", pairs=2000, seed=7))

# %%
small = ImplicitLayer(parse_seed("2K2"))
print(small.diameter("exact"))
