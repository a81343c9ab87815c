"""
Growing a half-model graph
==========================

Each step takes every subset of half the current nodes and adds one new
node wired to exactly that subset.  Sizes explode after a few steps, so
counting and materializing are kept separate.
"""

# %%
from igm import evolve, parse_seed, predicted_counts
from igm.graph import format_edgelist

levels = evolve(parse_seed("K1"), k=2, steps=4)
for g in levels:
    print(g.level, g.n, g.num_edges)

# %% [markdown]
# Clones carry provenance: the level they were born at and the parent subset.

# %%
g3 = levels[3]
for v in g3.newest_clones():
    print(v, g3.provenance[v])

# %%
print(format_edgelist(levels[2]))

# %% [markdown]
# Counting never builds anything.  Level 5 already has a 78-digit order.

# %%
for t, (n, e) in enumerate(predicted_counts(1, 0, 2, 5)):
    print(t, len(str(n)), "digits")

# %% [markdown]
# Starting from a 4-cycle, one step adds six clones, all of degree 2.

# %%
c4 = evolve(parse_seed("C4"), 2, 1)[1]
print(c4.n, c4.num_edges, [c4.degree(v) for v in c4.newest_clones()])
