"""Product constructions driven by a filter on the index set.

A box is one subset choice per factor; its distinguished index set delta is
where the choice is the whole factor, and its support sigma is the rest.
Restricting boxes to those whose delta belongs to the index filter yields,
depending on what each factor carries, the product topology, the product
filter, or (in the uniformity module) the product uniformity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .filters import Filter, FilterBase, generate_filter, principal_filter
from .foundations import (
    InputError,
    ProductIndexing,
    SetFamily,
    SubsetMask,
    Universe,
)
from .topology import Topology, generate_topology, is_continuous


@dataclass(frozen=True)
class Factor:
    """One coordinate space: a universe plus whichever structures it carries."""

    universe: Universe
    topology: Topology | None = None
    filter: Filter | None = None
    uniformity_base: SetFamily | None = None

    def __post_init__(self) -> None:
        n = self.universe.size
        if self.topology is not None and self.topology.universe_size != n:
            raise InputError("factor topology universe mismatch")
        if self.filter is not None and self.filter.universe_size != n:
            raise InputError("factor filter universe mismatch")
        if self.uniformity_base is not None and self.uniformity_base.universe_size != n * n:
            raise InputError("factor uniformity base must live on the squared universe")


@dataclass(frozen=True)
class ProductSpec:
    """Indexed factors plus a filter on the index set."""

    index_universe: Universe
    factors: tuple[Factor, ...]
    index_filter: Filter | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) != self.index_universe.size:
            raise InputError("one factor per index element is required")
        if (
            self.index_filter is not None
            and self.index_filter.universe_size != self.index_universe.size
        ):
            raise InputError("index filter lives on the wrong universe")

    @property
    def indexing(self) -> ProductIndexing:
        return ProductIndexing(tuple(f.universe.size for f in self.factors))

    def _require_index_filter(self) -> Filter:
        if self.index_filter is None:
            raise InputError("this construction needs an index filter")
        return self.index_filter


def product_spec(factors: tuple[Factor, ...] | list[Factor], index_filter: Filter | None = None) -> ProductSpec:
    """Spec with the default index universe labelled 1..k."""
    factors = tuple(factors)
    return ProductSpec(Universe.indices(len(factors)), factors, index_filter)


@dataclass(frozen=True)
class Box:
    """One subset of each factor; denotes the set of points hitting every choice."""

    per_factor: tuple[SubsetMask, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "per_factor", tuple(self.per_factor))
        if not self.per_factor:
            raise InputError("a box needs at least one factor")


def box_delta(box: Box) -> SubsetMask:
    """Indexes where the box takes the whole factor (exact set equality)."""
    k = len(box.per_factor)
    return SubsetMask.of(k, (i for i, m in enumerate(box.per_factor) if m.is_full))


def box_sigma(box: Box) -> SubsetMask:
    """Support: indexes where the box is a proper subset of the factor."""
    return box_delta(box).complement()


def box_intersection(b1: Box, b2: Box) -> Box:
    if len(b1.per_factor) != len(b2.per_factor):
        raise InputError("boxes have different factor counts")
    return Box(tuple(a & b for a, b in zip(b1.per_factor, b2.per_factor)))


def box_to_pointset(box: Box, idx: ProductIndexing) -> SubsetMask:
    """The box as a concrete subset of the coded product universe."""
    if tuple(m.universe_size for m in box.per_factor) != idx.factor_sizes:
        raise InputError("box factor sizes do not match the indexing")
    total = idx.total
    bits = 0
    for code in range(total):
        coords = idx.decode_point(code)
        if all(coords[i] in box.per_factor[i] for i in range(len(coords))):
            bits |= 1 << code
    return SubsetMask(total, bits)


def _delta_member(spec: ProductSpec, delta_family: SetFamily | None):
    if delta_family is not None:
        if delta_family.universe_size != spec.index_universe.size:
            raise InputError("delta family lives on the wrong universe")
        return delta_family.contains_bits
    return spec._require_index_filter().member_bits


def f_topology_base(spec: ProductSpec, delta_family: SetFamily | None = None) -> SetFamily:
    """Point sets of all open boxes whose delta is accepted.

    Acceptance is membership in the index filter, or in an arbitrary
    intersection-closed family passed as delta_family (the construction does
    not need full filter structure). Boxes with an empty side are dropped;
    the empty set reappears as the empty union.
    """
    member = _delta_member(spec, delta_family)
    idx = spec.indexing
    per_factor_opens = []
    for f in spec.factors:
        if f.topology is None:
            raise InputError("every factor needs a topology for the product topology")
        per_factor_opens.append([m for m in f.topology.opens() if not m.is_empty])
    pointsets = []
    for choice in itertools.product(*per_factor_opens):
        box = Box(choice)
        if member(box_delta(box).bits):
            pointsets.append(box_to_pointset(box, idx))
    return SetFamily.of(idx.total, pointsets)


def f_topology(spec: ProductSpec, delta_family: SetFamily | None = None) -> Topology:
    """The product topology generated by the accepted open boxes."""
    return generate_topology(f_topology_base(spec, delta_family))


def projection_preimage(i: int, sub: SubsetMask, idx: ProductIndexing) -> SubsetMask:
    """Points whose i-th coordinate lies in the given factor subset."""
    if not 0 <= i < len(idx.factor_sizes):
        raise InputError(f"factor index {i} out of range")
    if sub.universe_size != idx.factor_sizes[i]:
        raise InputError("subset lives on the wrong factor")
    bits = 0
    for code in range(idx.total):
        if idx.decode_point(code)[i] in sub:
            bits |= 1 << code
    return SubsetMask(idx.total, bits)


def projection_map(i: int, idx: ProductIndexing) -> tuple[int, ...]:
    """The i-th projection as a point map on coded points."""
    if not 0 <= i < len(idx.factor_sizes):
        raise InputError(f"factor index {i} out of range")
    return tuple(idx.decode_point(code)[i] for code in range(idx.total))


def all_projections_continuous(spec: ProductSpec) -> bool:
    t = f_topology(spec)
    idx = spec.indexing
    for i, f in enumerate(spec.factors):
        assert f.topology is not None
        if not is_continuous(projection_map(i, idx), t, f.topology):
            return False
    return True


def equalizer(spec: ProductSpec, x: int) -> SubsetMask:
    """Points agreeing with x on an index set the filter accepts.

    With the trivial index filter every agreement set is accepted, so the
    equalizer is the whole product; callers that need a proper one should
    check the filter first.
    """
    fil = spec._require_index_filter()
    idx = spec.indexing
    if not 0 <= x < idx.total:
        raise InputError(f"point code {x} out of range")
    xs = idx.decode_point(x)
    k = len(xs)
    bits = 0
    for z in range(idx.total):
        zs = idx.decode_point(z)
        agree = 0
        for i in range(k):
            if xs[i] == zs[i]:
                agree |= 1 << i
        if fil.member_bits(agree):
            bits |= 1 << z
    return SubsetMask(idx.total, bits)


def different_by_filter(spec: ProductSpec, x: int, y: int) -> bool:
    """True iff the set of coordinates where x and y differ belongs to the index filter."""
    fil = spec._require_index_filter()
    idx = spec.indexing
    if not 0 <= x < idx.total or not 0 <= y < idx.total:
        raise InputError("point code out of range")
    xs, ys = idx.decode_point(x), idx.decode_point(y)
    differ = 0
    for i in range(len(xs)):
        if xs[i] != ys[i]:
            differ |= 1 << i
    return fil.member_bits(differ)


def _factor_filters(spec: ProductSpec) -> list[Filter]:
    out = []
    for f in spec.factors:
        if f.filter is None:
            raise InputError("every factor needs a filter for the product filter")
        if not f.filter.is_proper:
            raise InputError("factor filters must be proper")
        out.append(f.filter)
    return out


def f_filter_base(spec: ProductSpec) -> SetFamily:
    """Point sets of all boxes of factor-filter members whose delta is accepted."""
    fil = spec._require_index_filter()
    idx = spec.indexing
    member_lists = [f.members().members for f in _factor_filters(spec)]
    pointsets = []
    for choice in itertools.product(*member_lists):
        box = Box(choice)
        if fil.member_bits(box_delta(box).bits):
            pointsets.append(box_to_pointset(box, idx))
    return SetFamily.of(idx.total, pointsets)


def f_filter(spec: ProductSpec) -> Filter:
    """The product filter: supersets of the accepted filter boxes.

    Computed in closed form from the single minimal box (whole factor on the
    index-filter core, factor-filter core elsewhere); the definitional route
    through f_filter_base generates the same filter.
    """
    fil = spec._require_index_filter()
    idx = spec.indexing
    factor_filters = _factor_filters(spec)
    forced = fil.core  # empty mask when the index filter is trivial
    sides = []
    for i, ff in enumerate(factor_filters):
        if i in forced:
            sides.append(SubsetMask.full(ff.universe_size))
        else:
            sides.append(ff.core)
    core = box_to_pointset(Box(tuple(sides)), idx)
    return principal_filter(core)


def f_filter_via_base(spec: ProductSpec) -> Filter:
    """Definitional route: generate the filter from the enumerated box base."""
    base = f_filter_base(spec)
    return generate_filter(FilterBase(base.universe_size, base))
