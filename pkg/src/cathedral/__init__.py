"""Canonical matching structures of factorizable graphs.

The package computes factor-connected components, the canonical vertex
partition, the partial order on components, saturation tests and closures,
and the foundation/towers decomposition of saturated graphs, together with a
randomized conformance suite that rechecks every structural guarantee
against exhaustive oracles.
"""

from .canonical import (
    CanonicalPartition,
    ComponentPoset,
    FactorComponents,
    UpSets,
    allowed_edges,
    canonical_partition,
    component_leq,
    component_poset,
    factor_components,
    is_separating,
    minimum_component,
    same_class,
    up_sets,
)
from .construction import (
    CathedralTree,
    ConstructionSpec,
    construct,
    construct_tree,
    decompose,
    foundation_via_ge,
    is_saturated,
    saturate,
)
from .errors import (
    CathedralError,
    ComponentLimitError,
    ConstructionError,
    GraphFormatError,
    NoMinimumComponent,
    NotFactorizableError,
    NotSaturatedError,
    PreconditionError,
    SearchBudgetExceeded,
    StructureViolation,
)
from .gallai_edmonds import GEPartition, gallai_edmonds
from .graph import (
    ContractionResult,
    Edge,
    Graph,
    add_edges,
    complement_pairs,
    connected_components,
    contract,
    delete_vertices,
    edge,
    induced_subgraph,
    neighbors,
    parse_edge_list,
    render_edge_list,
)
from .matching import (
    AlternatingReach,
    Matching,
    PathKind,
    PerfectMatchingEnumeration,
    alternating_circuit_exists,
    alternating_path_exists,
    alternating_reachability,
    enumerate_perfect_matchings,
    is_factor_critical,
    is_factorizable,
    iter_saturated_paths,
    matching_number,
    maximum_matching,
    perfect_matching_union,
    restrict_matching,
)
from .verify import (
    CheckResult,
    CHECK_IDS,
    PATH_CHECK_IDS,
    SuiteReport,
    TrialConfig,
    random_factorizable_graph,
    run_suite,
    run_trials,
)

__version__ = "0.1.0"
