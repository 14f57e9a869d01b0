"""Ring-arrangement coverage, substructure counting and walk estimation.

The package groups a handful of related tools around one recurring trick:
visiting the neighbours of a node in rings drawn from a small cyclic
permutation family so that every pair of neighbours becomes adjacent in
some ring.  On top of that sit exact substructure counters, a colour
refinement for graph comparison, a random-walk triangle estimator, a
covering-time simulator with closed-form companion, and sequence
aggregators that consume the rings.
"""

from .coupon_sim import (
    SimulationResult,
    coupon_expectation_classic,
    kcoupon_expectation,
    pg_cover_count,
    sample_cover_times,
    savings_ratio,
    simulate_cover_complete,
)
from .graph_core import (
    Graph,
    InducedNeighborhood,
    add_artificial_apex,
    from_edge_list,
    gen_complete,
    gen_cycle,
    gen_erdos_renyi,
    gen_random_regular,
    gen_rooks_4x4,
    gen_shrikhande,
    gen_star,
    induced_closed_neighborhood,
    parse_edge_list_text,
    read_edge_list,
    write_edge_list,
)
from .perm_group import (
    Arrangement,
    CoverageReport,
    Permutation,
    PermutationGroup,
    act,
    arrangements,
    compose,
    coverage_report,
    generate_group,
    order,
    sigma,
    sigma_group_order,
)
from .pg_aggregate import (
    SeqAggregator,
    aggregate_node,
    aggregate_node_merged,
    distinguish_by_aggregation,
    gin_layer_reference,
    linear_recurrence,
    readout_graph,
)
from .rw_estimator import (
    EstimateResult,
    WalkConfig,
    estimate_incidence_triangles,
    expected_moments,
    simple_random_walk,
    stationary_moments,
)
from .substructure import (
    CountVector,
    brute_force_incidence_4cliques,
    brute_force_incidence_triangles,
    clustering_coefficients,
    incidence_4cliques,
    incidence_triangles,
    incidence_triangles_directed,
    incidence_wedges,
    total_triangles,
)
from .wl import ColorHistogram, kwl_refine, wl1_refine, wl_distinguish

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "ColorHistogram",
    "CountVector",
    "CoverageReport",
    "EstimateResult",
    "Graph",
    "InducedNeighborhood",
    "Permutation",
    "PermutationGroup",
    "SeqAggregator",
    "SimulationResult",
    "WalkConfig",
    "act",
    "add_artificial_apex",
    "aggregate_node",
    "aggregate_node_merged",
    "arrangements",
    "brute_force_incidence_4cliques",
    "brute_force_incidence_triangles",
    "clustering_coefficients",
    "compose",
    "coupon_expectation_classic",
    "coverage_report",
    "distinguish_by_aggregation",
    "estimate_incidence_triangles",
    "expected_moments",
    "from_edge_list",
    "gen_complete",
    "gen_cycle",
    "gen_erdos_renyi",
    "gen_random_regular",
    "gen_rooks_4x4",
    "gen_shrikhande",
    "gen_star",
    "generate_group",
    "gin_layer_reference",
    "incidence_4cliques",
    "incidence_triangles",
    "incidence_triangles_directed",
    "incidence_wedges",
    "induced_closed_neighborhood",
    "kcoupon_expectation",
    "kwl_refine",
    "linear_recurrence",
    "order",
    "parse_edge_list_text",
    "pg_cover_count",
    "read_edge_list",
    "readout_graph",
    "sample_cover_times",
    "savings_ratio",
    "sigma",
    "sigma_group_order",
    "simple_random_walk",
    "simulate_cover_complete",
    "stationary_moments",
    "total_triangles",
    "wl1_refine",
    "wl_distinguish",
    "write_edge_list",
]
