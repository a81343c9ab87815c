"""Iterated global network models: generation, exact parameters, implicit layers."""

__version__ = "0.1.0"

from .combinatorics import (
    binomial,
    central_binomial_approx,
    central_binomial_parts,
    colex_rank,
    colex_subsets,
    colex_unrank,
    predicted_counts,
)
from .errors import CapacityError, SeedParseError
from .graph import Clone, GraphSnapshot, Original, parse_seed
from .implicit import CloneRank, ImplicitLayer, Old
from .model import DEFAULT_NODE_BUDGET, ModelParams, evolve, evolve_step
