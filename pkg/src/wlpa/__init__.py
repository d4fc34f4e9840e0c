"""Computer algebra for weighted Leavitt path algebras.

Canonical normal forms via a confluent reduction system, exact arithmetic
over Z, Q and prime fields, multi-degree grading with a local valuation,
and structural classification with explicit witnesses.
"""

from .classify import (
    ClassificationReport,
    GeneratorMap,
    QuotientWitness,
    Verdict,
    all_hereditary_saturated,
    associated_unweighted_graph,
    cycle_without_exit,
    find_lr_normal_witness,
    has_quotient_config,
    hereditary_saturated_closure,
    is_lr_normal,
    is_lv_graph,
    is_lv_rose,
    is_reducible,
    leavitt_algebra_graph,
    lpa_is_graded_simple,
    lpa_is_simple,
    map_element,
    module_type,
    quotient_system,
    quotient_witness,
    reduced_subgraph,
    reducibility,
    verify_generator_map,
    wlpa_classify,
)
from .elements import FreeRingElement, format_element, monomial, zero
from .grading import (
    NEG_INFINITY,
    check_valuation_axioms,
    degree,
    grading_rank,
    homogeneous_components,
    local_valuation,
    support,
)
from .graph import (
    GraphError,
    Letter,
    StructuredEdge,
    WeightedGraph,
    Word,
    connected_components,
    dual,
    edge,
    find_path,
    format_word,
    is_generalized_path,
    path_length,
    special_assignment,
    special_edge,
    star,
    validate_graph,
    vertex,
    vertex_weight,
    weight_forest,
    weighted_graph,
    weighted_vertices,
    word_dual,
)
from .rewrite import (
    Ambiguity,
    ReductionRule,
    ReductionSystem,
    build_reduction_system,
    check_ambiguity_resolvable,
    defining_relations,
    enumerate_ambiguities,
    enumerate_normal_words,
    is_normal_word,
    multiply,
    normal_form,
    reduce_once,
    star_element,
    system_for,
    word_measure,
)
from .rings import GF, QQ, ZZ, RingError, ring_from_name
from .testkit import (
    ConfluenceReport,
    SamplerConfig,
    SplitMix64,
    brute_force_normal_words,
    random_element,
    random_reduce,
    run_confluence_suite,
)

__all__ = [name for name in dir() if not name.startswith("_")]
