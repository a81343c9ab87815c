"""Graph parameters on materialized snapshots."""
from .connectivity import (
    articulation_points,
    bfs_distances,
    connected_components,
    diameter,
    eccentricity,
    is_biconnected,
    is_connected,
)
from .densification import densification_series
from .solvers import (
    ParamResult,
    chromatic_number,
    clique_number,
    construct_dominating_set,
    domination_number,
    dsatur_coloring,
    independence_number,
    is_dominating_set,
    is_proper_coloring,
)
from .spectral import (
    SpectralResult,
    VolumeDecomposition,
    mixing_bound,
    mixing_bound_exact,
    normalized_laplacian,
    normalized_laplacian_spectrum,
    spectral_gap,
    volume_decomposition,
)
