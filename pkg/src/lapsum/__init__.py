"""Laplacian eigenvalue-sum bounds, graph densities, and edge decompositions.

Core objects re-exported here; see the module docstrings for details.
"""

from .bounds import (
    BOUND_TAGS,
    CONJECTURE_TAGS,
    THEOREM_TAGS,
    VIOLATION_TOL,
    BoundResult,
    BoundSpec,
    MissingAuxError,
    aux_requirements,
    bound_spec,
    evaluate_bound,
)
from .decomposition import (
    AssignmentExhausted,
    ForestDecomposition,
    KCAssignment,
    PipelineResult,
    StarForestDecomposition,
    StructureDecomposition,
    arboricity_value,
    forest_decomposition,
    forest_to_two_star_forests,
    is_star_forest,
    random_kc_assignment,
    sa_upper_bound_pipeline,
    sa_via_cover,
    star_arboricity_exact,
    structure_decomposition,
)
from .density import (
    DensityWitness,
    Orientation,
    OrientationInfeasible,
    PartitionWitness,
    PeelStep,
    SizeCapError,
    density,
    k_orientation,
    partition_density,
    partition_density_bracket,
    peel_to_low_partition_density,
    random_k_orientation,
)
from .graphs import (
    FamilyId,
    Graph,
    Graph6Error,
    GraphError,
    GraphSource,
    all_labeled_graphs,
    conjugate_degrees,
    disjoint_union,
    encode_graph6,
    gnp_graphs,
    graph_from_edges,
    graph_stream,
    induced_subgraph,
    make_family,
    parse_edge_list,
    parse_family,
    parse_graph6,
)
from .harness import KRange, ProbeRow, ScanReport, scan, tightness_probe
from .matching import (
    AlgorithmError,
    GallaiEdmonds,
    HallResult,
    MatchingResult,
    OddSetCover,
    StarPacking,
    gallai_edmonds,
    greedy_cover_2approx,
    hall_violator,
    matching_number,
    maximum_matching,
    min_vertex_cover,
    normalize_odd_set_cover,
    nu_ell,
    nu_ell_value,
    odd_set_cover,
)
from .spectral import EpsProfile, Spectrum, eps, eps_profile, laplacian, spectrum

__version__ = "0.1.0"
