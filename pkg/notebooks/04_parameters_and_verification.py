"""
Graph parameters and the verification report
============================================

Exact solvers for clique, independence, chromatic and domination numbers
run under a wall-clock budget.  The verification driver compares them,
and everything else, against the closed-form predictions level by level.
"""

# %%
from igm import ModelParams, evolve, parse_seed
from igm import metrics
from igm.verify import VerifyOptions, run_all

g = evolve(parse_seed("K1"), 2, 4)[-1]
for fn in (metrics.clique_number, metrics.independence_number,
           metrics.chromatic_number, metrics.domination_number):
    r = fn(g, 10)
    print(r.name, r.lower, r.upper, f"{r.elapsed_ms:.1f} ms")

# %%
print(sorted(metrics.construct_dominating_set(g)))

# %% [markdown]
# At level 4 from K1 the clique and chromatic predictions say 5 but both
# are 4.  The report flags these rows instead of hiding them.

# %%
report = run_all(ModelParams("K1"), 4, VerifyOptions(sample_pairs=2000))
for c in report.checks:
    if c.level == 4 or c.status == "mismatch_paper_formula":
        print(c.theorem_id, c.level, c.status, c.predicted_paper, c.measured)
