"""Filter-indexed product structures on finite spaces, built exactly and checked exhaustively."""

from .foundations import (
    InputError,
    ProductIndexing,
    ResourceLimitError,
    SetFamily,
    SubsetMask,
    Universe,
    canonicalize,
    is_intersection_closed,
)
from .filters import (
    Filter,
    FilterBase,
    filter_leq,
    frechet_filter,
    generate_filter,
    is_saturated,
    is_ultrafilter,
    principal_filter,
    pushforward,
    trivial_filter,
    validate_filter_base,
)
from .topology import (
    Topology,
    discrete,
    enumerate_topologies,
    find_disjoint_dense,
    generate_topology,
    indiscrete,
    is_continuous,
    sierpinski,
    subspace,
    topologies_equal,
    topology_leq,
    validate_base,
)
from .fproduct import (
    Box,
    Factor,
    ProductSpec,
    all_projections_continuous,
    box_delta,
    box_sigma,
    box_to_pointset,
    different_by_filter,
    equalizer,
    f_filter,
    f_filter_base,
    f_topology,
    f_topology_base,
    product_spec,
    projection_preimage,
)
from .uniformity import (
    Relation,
    Uniformity,
    compose,
    diagonal,
    entourage_ball,
    f_uniformity,
    generate_uniformity,
    induced_topology,
    inverse,
    is_uniformly_continuous,
    validate_uniformity_base,
)
from .verifier import (
    InstanceGrid,
    PropositionReport,
    enumerate_filters,
    proposition_catalog,
    replay_witness,
    search_counterexample,
    verify_proposition,
)

__all__ = [
    "Box",
    "Factor",
    "Filter",
    "FilterBase",
    "InputError",
    "InstanceGrid",
    "ProductIndexing",
    "ProductSpec",
    "PropositionReport",
    "Relation",
    "ResourceLimitError",
    "SetFamily",
    "SubsetMask",
    "Topology",
    "Uniformity",
    "Universe",
    "all_projections_continuous",
    "box_delta",
    "box_sigma",
    "box_to_pointset",
    "canonicalize",
    "compose",
    "diagonal",
    "different_by_filter",
    "discrete",
    "entourage_ball",
    "enumerate_filters",
    "enumerate_topologies",
    "equalizer",
    "f_filter",
    "f_filter_base",
    "f_topology",
    "f_topology_base",
    "f_uniformity",
    "filter_leq",
    "find_disjoint_dense",
    "frechet_filter",
    "generate_filter",
    "generate_topology",
    "generate_uniformity",
    "indiscrete",
    "induced_topology",
    "inverse",
    "is_continuous",
    "is_intersection_closed",
    "is_saturated",
    "is_ultrafilter",
    "is_uniformly_continuous",
    "principal_filter",
    "product_spec",
    "projection_preimage",
    "proposition_catalog",
    "pushforward",
    "replay_witness",
    "search_counterexample",
    "sierpinski",
    "subspace",
    "topologies_equal",
    "topology_leq",
    "trivial_filter",
    "validate_base",
    "validate_filter_base",
    "validate_uniformity_base",
    "verify_proposition",
]
