"""Random regular graphs: geodesic-routing congestion, four-point
hyperbolicity, and almost-geodesic cycle probes, with seeded experiment
sweeps at desk scale."""

from .congestion import (
    CongestionReport,
    brute_force_congestion,
    congestion_report_csv,
    degree_diameter_bound,
    congestion_scaling_bound,
    tree_max_congestion,
    vertex_congestion,
)
from .cycles import (
    CycleProbeResult,
    ProbeStatistics,
    cycle_defect,
    find_cycle_through_pair,
    probe_statistics,
    probe_statistics_csv,
    witness_quadruple,
)
from .experiments import (
    ExperimentConfig,
    ExperimentResult,
    parse_config,
    run_experiment,
)
from .generate import (
    GenSpec,
    RetriesExhaustedError,
    complete_graph,
    cycle_graph,
    is_connected,
    path_graph,
    random_regular,
    regular_tree,
)
from .graph import Graph, read_edge_list, write_edge_list
from .hyperbolicity import (
    HyperbolicityReport,
    exact_delta,
    four_point_defect,
    hyperbolicity_report_json,
    quadruple_defect_from_distances,
    sampled_delta,
    triangle_fatness,
)
from .paths import (
    ShortestPathData,
    bfs,
    diameter,
    distance_matrix,
    extract_one_geodesic,
    single_source_distances,
)
from .seeding import derive_seed, splitmix64

__version__ = "0.1.0"

__all__ = [
    "CongestionReport",
    "CycleProbeResult",
    "ExperimentConfig",
    "ExperimentResult",
    "GenSpec",
    "Graph",
    "HyperbolicityReport",
    "ProbeStatistics",
    "RetriesExhaustedError",
    "ShortestPathData",
    "bfs",
    "brute_force_congestion",
    "complete_graph",
    "congestion_report_csv",
    "cycle_defect",
    "cycle_graph",
    "derive_seed",
    "diameter",
    "distance_matrix",
    "exact_delta",
    "extract_one_geodesic",
    "find_cycle_through_pair",
    "four_point_defect",
    "hyperbolicity_report_json",
    "is_connected",
    "degree_diameter_bound",
    "parse_config",
    "path_graph",
    "probe_statistics",
    "probe_statistics_csv",
    "quadruple_defect_from_distances",
    "random_regular",
    "read_edge_list",
    "regular_tree",
    "run_experiment",
    "sampled_delta",
    "single_source_distances",
    "splitmix64",
    "congestion_scaling_bound",
    "tree_max_congestion",
    "triangle_fatness",
    "vertex_congestion",
    "witness_quadruple",
    "write_edge_list",
]
