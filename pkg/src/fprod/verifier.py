"""Exhaustive desk-scale verification of the product-construction propositions.

Each proposition id maps to a deterministic instance generator and a
single-instance check. A verification run walks the grid in canonical order,
stops at the first failing instance, and reports it as a replayable witness
(the witness is the instance payload itself, so re-running the check on it
reproduces the verdict). Hypotheses are enforced by each proposition's
default grid; a custom grid may inject hypothesis violations, in which case
the run honestly fails and exhibits the violation.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

from . import serialize
from .filters import (
    Filter,
    filter_leq,
    is_saturated,
    principal_filter,
    pushforward,
    trivial_filter,
    validate_filter_base,
)
from .foundations import (
    InputError,
    SetFamily,
    SubsetMask,
    Universe,
    is_intersection_closed,
)
from .fproduct import (
    Factor,
    ProductSpec,
    all_projections_continuous,
    different_by_filter,
    equalizer,
    f_filter,
    f_filter_base,
    f_topology,
    f_topology_base,
    product_spec,
    projection_map,
)
from .topology import (
    Topology,
    discrete,
    enumerate_topologies,
    generate_topology,
    indiscrete,
    is_continuous,
    sierpinski,
    subspace,
    topologies_equal,
    topology_leq,
    validate_base,
)
from .uniformity import (
    enumerate_uniformity_bases,
    f_uniformity,
    f_uniformity_base,
    generate_uniformity,
    induced_topology,
    validate_uniformity_base,
)

_FILTER_ENUM_CAP = 4

_NOTE_COFINITE = "degenerate on a finite index set: the cofinite filter is the trivial filter"
_NOTE_SATURATED = "degenerate on a finite index set: the only saturated filter is the trivial filter"


@lru_cache(maxsize=None)
def enumerate_filters(n: int, include_trivial: bool = True) -> tuple[Filter, ...]:
    """All filters on an n-element universe: one principal filter per nonempty
    core (ascending bit-vector order), plus the trivial filter last."""
    if not 1 <= n <= _FILTER_ENUM_CAP:
        raise InputError(f"filter enumeration supports 1 <= n <= {_FILTER_ENUM_CAP}")
    out = [principal_filter(SubsetMask(n, bits)) for bits in range(1, 1 << n)]
    if include_trivial:
        out.append(trivial_filter(n))
    return tuple(out)


FACTOR_PRESETS = ("sierpinski", "discrete2", "discrete3", "indiscrete2")


def preset_factor(name: str) -> Factor:
    if name == "sierpinski":
        topo = sierpinski()
    elif name == "discrete2":
        topo = discrete(2)
    elif name == "discrete3":
        topo = discrete(3)
    elif name == "indiscrete2":
        topo = indiscrete(2)
    else:
        raise InputError(f"unknown factor preset {name!r}; known: {FACTOR_PRESETS}")
    return Factor(Universe.points(topo.universe_size), topology=topo)


@dataclass(frozen=True)
class InstanceGrid:
    """Deterministic instance enumeration bounds for one verification run.

    Propositions interpret the fields they use: index_sizes picks the index
    set sizes, factor_universe_max bounds enumerated factor spaces,
    factor_preset fixes factors when factor_source is "fixed", and
    filter_source selects the index filters ("all", "proper", "trivial", or
    "named" with named_filters entries that are either "trivial" or
    comma-joined core labels such as "1,2").
    """

    index_sizes: tuple[int, ...] = (2,)
    factor_universe_max: int = 2
    factor_source: str = "fixed"
    factor_preset: str = "discrete2"
    filter_source: str = "all"
    named_filters: tuple[str, ...] = ()
    max_instances: int | None = None
    max_seconds: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "index_sizes", tuple(self.index_sizes))
        object.__setattr__(self, "named_filters", tuple(self.named_filters))
        if not self.index_sizes or any(k < 1 for k in self.index_sizes):
            raise InputError("index sizes must be positive")
        if self.max_instances is not None and self.max_instances < 1:
            raise InputError("instance budget must be positive")

    def describe(self) -> dict:
        return {
            "index_sizes": list(self.index_sizes),
            "factor_universe_max": self.factor_universe_max,
            "factor_source": self.factor_source,
            "factor_preset": self.factor_preset,
            "filter_source": self.filter_source,
            "named_filters": list(self.named_filters),
            "max_instances": self.max_instances,
        }


@dataclass(frozen=True)
class PropositionReport:
    """Outcome of one verification or counterexample-search run."""

    prop_id: str
    description: str
    grid: InstanceGrid
    checked: int
    passed: bool
    complete: bool = True
    witness: dict | None = None
    degenerate_notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "prop": self.prop_id,
            "description": self.description,
            "grid": self.grid.describe(),
            "checked": self.checked,
            "passed": self.passed,
            "complete": self.complete,
            "witness": self.witness,
            "degenerate_notes": list(self.degenerate_notes),
        }


def _grid_filters(grid: InstanceGrid, n: int) -> list[Filter]:
    src = grid.filter_source
    if src == "all":
        return list(enumerate_filters(n, include_trivial=True))
    if src == "proper":
        return list(enumerate_filters(n, include_trivial=False))
    if src == "trivial":
        return [trivial_filter(n)]
    if src == "named":
        uni = Universe.indices(n)
        out = []
        for name in grid.named_filters:
            if name == "trivial":
                out.append(trivial_filter(n))
            else:
                labels = [p.strip() for p in name.split(",") if p.strip()]
                if not labels:
                    raise InputError(f"empty named filter entry {name!r}")
                out.append(
                    principal_filter(
                        SubsetMask.of(n, (uni.index_of(lab) for lab in labels))
                    )
                )
        if not out:
            raise InputError("filter source 'named' needs at least one named filter")
        return out
    raise InputError(f"unknown filter source {src!r}")


def _all_topology_factors(max_size: int) -> list[Factor]:
    out = []
    for size in range(1, max_size + 1):
        for t in enumerate_topologies(size):
            out.append(Factor(Universe.points(size), topology=t))
    return out


def _nontrivial_topology_factors(max_size: int) -> list[Factor]:
    out = []
    for size in range(1, max_size + 1):
        for t in enumerate_topologies(size):
            if len(t.opens()) > 2:
                out.append(Factor(Universe.points(size), topology=t))
    return out


def _proper_filter_factors(size: int = 2) -> list[Factor]:
    return [
        Factor(Universe.points(size), filter=f)
        for f in enumerate_filters(size, include_trivial=False)
    ]


def _uniformity_factors() -> list[Factor]:
    return [
        Factor(Universe.points(2), uniformity_base=b)
        for b in enumerate_uniformity_bases(2)
    ]


def _spec_payload(spec: ProductSpec) -> dict:
    return {"instance": serialize.spec_to_dict(spec)}


# ---------------------------------------------------------------------------
# per-proposition instance generators and single-instance checks


def _p21_instances(grid: InstanceGrid) -> Iterator[dict]:
    for k in grid.index_sizes:
        factors = tuple(preset_factor(grid.factor_preset) for _ in range(k))
        spec = product_spec(factors)
        inst = serialize.spec_to_dict(spec)
        uni = spec.index_universe
        subset_count = 1 << k
        for fam_bits in range(1, 1 << subset_count):
            fam = [
                serialize.mask_to_labels(SubsetMask(k, m), uni)
                for m in range(subset_count)
                if fam_bits >> m & 1
            ]
            yield {"instance": inst, "delta_family": fam}


def _p21_check(payload: dict) -> tuple[bool, dict | None]:
    spec = serialize.parse_instance(payload["instance"])
    uni = spec.index_universe
    fam = SetFamily.of(
        uni.size,
        (serialize.labels_to_mask(s, uni) for s in payload["delta_family"]),
    )
    base = f_topology_base(spec, delta_family=fam)
    is_base = validate_base(base)
    closed = is_intersection_closed(fam)
    if is_base == closed:
        return True, None
    return False, {
        "family_intersection_closed": closed,
        "box_family_is_base": is_base,
    }


def _p23_instances(grid: InstanceGrid) -> Iterator[dict]:
    for k in grid.index_sizes:
        factors = tuple(preset_factor(grid.factor_preset) for _ in range(k))
        uni = Universe.indices(k)
        fils = _grid_filters(grid, k)
        for f, g in itertools.product(fils, fils):
            spec = ProductSpec(uni, factors, f)
            yield {
                "instance": serialize.spec_to_dict(spec),
                "second_index_filter": serialize.filter_to_dict(g, uni),
            }


def _p23_check(payload: dict) -> tuple[bool, dict | None]:
    spec = serialize.parse_instance(payload["instance"])
    assert spec.index_filter is not None
    g = serialize.filter_from_dict(payload["second_index_filter"], spec.index_universe)
    lhs = filter_leq(spec.index_filter, g)
    rhs = topology_leq(
        f_topology(spec),
        f_topology(ProductSpec(spec.index_universe, spec.factors, g)),
    )
    if lhs == rhs:
        return True, None
    return False, {"filter_leq": lhs, "topology_leq": rhs}


def _p25_instances(grid: InstanceGrid) -> Iterator[dict]:
    for k in grid.index_sizes:
        uni = Universe.indices(k)
        for fil in _grid_filters(grid, k):
            yield {"index_size": k, "index_filter": serialize.filter_to_dict(fil, uni)}


def _p25_check(payload: dict) -> tuple[bool, dict | None]:
    k = payload["index_size"]
    uni = Universe.indices(k)
    fil = serialize.filter_from_dict(payload["index_filter"], uni)
    members = fil.members().members
    misses_each_point = all(
        any(not (m.bits >> i & 1) for m in members) for i in range(k)
    )
    full = (1 << k) - 1
    complements_in = all(fil.member_bits(full ^ (1 << i)) for i in range(k))
    ok = misses_each_point == complements_in == is_saturated(fil)
    if ok:
        return True, None
    return False, {
        "member_missing_each_point": misses_each_point,
        "point_complements_are_members": complements_in,
    }


def _p27_instances(grid: InstanceGrid) -> Iterator[dict]:
    choices = _nontrivial_topology_factors(grid.factor_universe_max)
    for k in grid.index_sizes:
        for combo in itertools.product(choices, repeat=k):
            for fil in _grid_filters(grid, k):
                yield _spec_payload(ProductSpec(Universe.indices(k), combo, fil))


def _p27_check(payload: dict) -> tuple[bool, dict | None]:
    spec = serialize.parse_instance(payload["instance"])
    assert spec.index_filter is not None
    continuous = all_projections_continuous(spec)
    finer_than_cofinite = spec.index_filter.trivial
    if continuous == finer_than_cofinite:
        return True, None
    return False, {
        "all_projections_continuous": continuous,
        "filter_contains_all_cofinite_sets": finer_than_cofinite,
    }


def _p28_instances(grid: InstanceGrid) -> Iterator[dict]:
    choices = _all_topology_factors(grid.factor_universe_max)
    for k in grid.index_sizes:
        for combo in itertools.product(choices, repeat=k):
            for fil in _grid_filters(grid, k):
                yield _spec_payload(ProductSpec(Universe.indices(k), combo, fil))


def _factor_slice_failure(spec: ProductSpec, t: Topology) -> dict | None:
    """Check each factor is carried homeomorphically onto its slice through point 0."""
    idx = spec.indexing
    y = idx.decode_point(0)
    for i, f in enumerate(spec.factors):
        assert f.topology is not None
        codes = []
        for xi in range(f.universe.size):
            coords = list(y)
            coords[i] = xi
            codes.append(idx.encode_point(coords))
        carrier = SubsetMask.of(idx.total, codes)
        sub = subspace(t, carrier)
        order = sorted(codes)
        fwd = tuple(idx.decode_point(c)[i] for c in order)
        if sorted(fwd) != list(range(f.universe.size)):
            return {"slice_projection_not_bijective_at_factor": i}
        inv = tuple(order.index(codes[xi]) for xi in range(f.universe.size))
        if not is_continuous(fwd, sub, f.topology) or not is_continuous(
            inv, f.topology, sub
        ):
            return {"slice_not_homeomorphic_at_factor": i}
    return None


def _p28_check(payload: dict) -> tuple[bool, dict | None]:
    spec = serialize.parse_instance(payload["instance"])
    assert spec.index_filter is not None
    t = f_topology(spec)
    product_h = t.is_hausdorff()
    factors_h = all(f.topology.is_hausdorff() for f in spec.factors)  # type: ignore[union-attr]
    if product_h != factors_h:
        return False, {
            "product_hausdorff": product_h,
            "all_factors_hausdorff": factors_h,
        }
    if is_saturated(spec.index_filter):
        failure = _factor_slice_failure(spec, t)
        if failure is not None:
            return False, failure
    return True, None


def _e29_instances(grid: InstanceGrid) -> Iterator[dict]:
    k = grid.index_sizes[0]
    factors = tuple(preset_factor("discrete2") for _ in range(k))
    uni = Universe.indices(k)
    pinned = ProductSpec(uni, factors, principal_filter(SubsetMask.of(k, [0])))
    yield {"instance": serialize.spec_to_dict(pinned), "expect_hausdorff": False}
    boxed = ProductSpec(uni, factors, trivial_filter(k))
    yield {"instance": serialize.spec_to_dict(boxed), "expect_hausdorff": True}


def _e29_check(payload: dict) -> tuple[bool, dict | None]:
    spec = serialize.parse_instance(payload["instance"])
    t = f_topology(spec)
    h = t.is_hausdorff()
    if h != payload["expect_hausdorff"]:
        return False, {"hausdorff": h, "expected": payload["expect_hausdorff"]}
    if payload["expect_hausdorff"]:
        return True, None
    idx = spec.indexing
    k = len(spec.factors)
    x = idx.encode_point([1] + [0] * (k - 1))
    y = idx.encode_point([0] * k)
    if (t.minimal_neighborhood(x) & t.minimal_neighborhood(y)).is_empty:
        return False, {"pair_unexpectedly_separated": True}
    pair = sorted(
        [serialize.product_point_label(y, spec), serialize.product_point_label(x, spec)]
    )
    return True, {"inseparable_pair": pair}


def _p210_instances(grid: InstanceGrid) -> Iterator[dict]:
    for n in range(1, grid.factor_universe_max + 1):
        uni = Universe.points(n)
        for t in enumerate_topologies(n):
            yield {
                "space_size": n,
                "base": [serialize.mask_to_labels(m, uni) for m in t.base],
            }


def _p210_check(payload: dict) -> tuple[bool, dict | None]:
    n = payload["space_size"]
    uni = Universe.points(n)
    fam = SetFamily.of(n, (serialize.labels_to_mask(s, uni) for s in payload["base"]))
    t = generate_topology(fam)
    if not t.is_hausdorff():
        return True, None  # hypothesis empty; every finite space is compact
    for other in enumerate_topologies(n):
        if topologies_equal(other, t):
            continue
        if topology_leq(other, t) and other.is_hausdorff():
            return False, {"strictly_coarser_hausdorff_exists": True}
        if topology_leq(t, other):
            # a strictly finer topology would be a compact refinement
            return False, {"strictly_finer_topology_exists": True}
    return True, None


def _p31_instances(grid: InstanceGrid) -> Iterator[dict]:
    for k in grid.index_sizes:
        factors = tuple(preset_factor(grid.factor_preset) for _ in range(k))
        for fil in _grid_filters(grid, k):
            yield _spec_payload(ProductSpec(Universe.indices(k), factors, fil))


def _p31_check(payload: dict) -> tuple[bool, dict | None]:
    spec = serialize.parse_instance(payload["instance"])
    t = f_topology(spec)
    total = spec.indexing.total
    sigmas = [equalizer(spec, x) for x in range(total)]
    for x in range(total):
        if not t.is_dense(sigmas[x]):
            return False, {
                "non_dense_equalizer_at": serialize.product_point_label(x, spec)
            }
    for x in range(total):
        for y in range(total):
            if different_by_filter(spec, x, y) and not (sigmas[x] & sigmas[y]).is_empty:
                return False, {
                    "overlapping_equalizers": [
                        serialize.product_point_label(x, spec),
                        serialize.product_point_label(y, spec),
                    ]
                }
    return True, None


def _filtered_factor_instances(grid: InstanceGrid) -> Iterator[dict]:
    choices = _proper_filter_factors(2)
    for k in grid.index_sizes:
        for combo in itertools.product(choices, repeat=k):
            for fil in _grid_filters(grid, k):
                yield _spec_payload(ProductSpec(Universe.indices(k), combo, fil))


def _p41_check(payload: dict) -> tuple[bool, dict | None]:
    spec = serialize.parse_instance(payload["instance"])
    base = f_filter_base(spec)
    if validate_filter_base(base):
        return True, None
    return False, {"box_family_is_filter_base": False}


def _p42_check(payload: dict) -> tuple[bool, dict | None]:
    spec = serialize.parse_instance(payload["instance"])
    assert spec.index_filter is not None
    ffil = f_filter(spec)
    idx = spec.indexing
    saturated = is_saturated(spec.index_filter)
    for i, f in enumerate(spec.factors):
        assert f.filter is not None
        proj = pushforward(projection_map(i, idx), f.universe.size, ffil)
        if not filter_leq(proj, f.filter):
            return False, {"projection_not_contained_at_factor": i}
        if saturated and proj != f.filter:
            return False, {"saturated_projection_identity_fails_at_factor": i}
    return True, None


def _p43_instances(grid: InstanceGrid) -> Iterator[dict]:
    choices = _proper_filter_factors(2)
    for k in grid.index_sizes:
        for combo in itertools.product(choices, repeat=k):
            yield _spec_payload(
                ProductSpec(Universe.indices(k), combo, trivial_filter(k))
            )


def _p43_check(payload: dict) -> tuple[bool, dict | None]:
    spec = serialize.parse_instance(payload["instance"])
    box_filter = f_filter(spec)
    idx = spec.indexing
    pmaps = [projection_map(i, idx) for i in range(len(spec.factors))]
    for g in enumerate_filters(idx.total, include_trivial=True):
        if all(
            pushforward(pmaps[i], f.universe.size, g) == f.filter
            for i, f in enumerate(spec.factors)
        ):
            if not filter_leq(box_filter, g):
                return False, {
                    "smaller_filter_with_matching_projections": serialize.filter_to_dict(
                        g, Universe.points(idx.total)
                    )
                }
    return True, None


def _p45_instances(grid: InstanceGrid) -> Iterator[dict]:
    choices = _all_topology_factors(grid.factor_universe_max)
    for k in grid.index_sizes:
        for combo in itertools.product(choices, repeat=k):
            for fil in _grid_filters(grid, k):
                yield _spec_payload(ProductSpec(Universe.indices(k), combo, fil))


def _p45_check(payload: dict) -> tuple[bool, dict | None]:
    spec = serialize.parse_instance(payload["instance"])
    t = f_topology(spec)
    idx = spec.indexing
    for code in range(idx.total):
        coords = idx.decode_point(code)
        lhs = t.neighborhoods_filter(code)
        nb_factors = tuple(
            Factor(f.universe, filter=f.topology.neighborhoods_filter(c))  # type: ignore[union-attr]
            for f, c in zip(spec.factors, coords)
        )
        rhs = f_filter(ProductSpec(spec.index_universe, nb_factors, spec.index_filter))
        if lhs != rhs:
            return False, {
                "neighborhood_identity_fails_at": serialize.product_point_label(
                    code, spec
                )
            }
    return True, None


def _uniformity_instances(grid: InstanceGrid) -> Iterator[dict]:
    choices = _uniformity_factors()
    for k in grid.index_sizes:
        for combo in itertools.product(choices, repeat=k):
            for fil in _grid_filters(grid, k):
                yield _spec_payload(ProductSpec(Universe.indices(k), combo, fil))


def _p52_check(payload: dict) -> tuple[bool, dict | None]:
    spec = serialize.parse_instance(payload["instance"])
    base = f_uniformity_base(spec)
    if validate_uniformity_base(base):
        return True, None
    return False, {"box_family_is_uniformity_base": False}


def _p5ind_check(payload: dict) -> tuple[bool, dict | None]:
    spec = serialize.parse_instance(payload["instance"])
    from_uniformity = induced_topology(f_uniformity(spec))
    topo_factors = tuple(
        Factor(
            f.universe,
            topology=induced_topology(generate_uniformity(f.uniformity_base)),  # type: ignore[arg-type]
        )
        for f in spec.factors
    )
    from_factors = f_topology(
        ProductSpec(spec.index_universe, topo_factors, spec.index_filter)
    )
    if topologies_equal(from_uniformity, from_factors):
        return True, None
    return False, {"induced_topology_differs": True}


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class _Prop:
    prop_id: str
    description: str
    notes: tuple[str, ...]
    default_grid: InstanceGrid
    instances: Callable[[InstanceGrid], Iterator[dict]]
    check: Callable[[dict], tuple[bool, dict | None]]


_PROPS: dict[str, _Prop] = {}


def _register(prop: _Prop) -> None:
    _PROPS[prop.prop_id] = prop


_register(
    _Prop(
        "P2.1",
        "open boxes with accepted distinguished indexes form a topology base "
        "iff the accepting family is intersection-closed",
        ("grid restricted to non-trivial factors: with a trivial factor topology "
         "boxes cannot realize every distinguished index set",),
        InstanceGrid(index_sizes=(2, 3), factor_source="fixed", factor_preset="sierpinski"),
        _p21_instances,
        _p21_check,
    )
)
_register(
    _Prop(
        "P2.3",
        "the map from index filters to product topologies is an order immersion",
        (),
        InstanceGrid(index_sizes=(2, 3), factor_source="fixed", factor_preset="sierpinski",
                     filter_source="all"),
        _p23_instances,
        _p23_check,
    )
)
_register(
    _Prop(
        "P2.5",
        "a filter misses each index from some member iff every point complement is a member",
        (_NOTE_SATURATED,),
        InstanceGrid(index_sizes=(1, 2, 3, 4), factor_source="none", filter_source="all"),
        _p25_instances,
        _p25_check,
    )
)
_register(
    _Prop(
        "P2.7",
        "all projections are continuous iff the index filter contains every cofinite set",
        (_NOTE_COFINITE,
         "grid restricted to non-trivial factors: projections onto an indiscrete "
         "factor are continuous for every index filter"),
        InstanceGrid(index_sizes=(1, 2, 3), factor_source="all-topologies",
                     factor_universe_max=2, filter_source="all"),
        _p27_instances,
        _p27_check,
    )
)
_register(
    _Prop(
        "P2.8",
        "for a saturated index filter the product is Hausdorff iff every factor is; "
        "factors embed homeomorphically as slices",
        (_NOTE_SATURATED,),
        InstanceGrid(index_sizes=(2,), factor_source="all-topologies",
                     factor_universe_max=3, filter_source="trivial"),
        _p28_instances,
        _p28_check,
    )
)
_register(
    _Prop(
        "E2.9",
        "discrete two-point factors with a principal index filter give a non-Hausdorff "
        "product; the trivial filter gives a Hausdorff one",
        ("the points differing only at the pinned index share every basic neighborhood",),
        InstanceGrid(index_sizes=(3,), factor_source="fixed", factor_preset="discrete2",
                     filter_source="named", named_filters=("1",)),
        _e29_instances,
        _e29_check,
    )
)
_register(
    _Prop(
        "P2.10",
        "a Hausdorff compact topology is Hausdorff-minimal and compact-maximal "
        "(finite degenerate form)",
        ("every finite space is compact and every finite Hausdorff space is discrete; "
         "the compact-maximal direction is vacuous because the discrete topology is "
         "the top of the lattice",),
        InstanceGrid(index_sizes=(1,), factor_source="all-topologies", factor_universe_max=3,
                     filter_source="trivial"),
        _p210_instances,
        _p210_check,
    )
)
_register(
    _Prop(
        "P3.1",
        "equalizers are dense, and equalizers of filter-different points are disjoint",
        ("with the trivial index filter the equalizer is the whole product; "
         "the disjointness half needs a proper filter",),
        InstanceGrid(index_sizes=(1, 2, 3), factor_source="fixed", factor_preset="discrete2",
                     filter_source="proper"),
        _p31_instances,
        _p31_check,
    )
)
_register(
    _Prop(
        "P4.1",
        "boxes of factor-filter members with accepted distinguished indexes form a filter base",
        (),
        InstanceGrid(index_sizes=(1, 2, 3), factor_source="all-filters", filter_source="all"),
        _filtered_factor_instances,
        _p41_check,
    )
)
_register(
    _Prop(
        "P4.2",
        "projections of the product filter are contained in the factor filters, "
        "with equality for a saturated index filter",
        (_NOTE_SATURATED,
         "for a non-saturated filter the containment can be strict; see the "
         "projection-filter-identity-for-all-filters counterexample search"),
        InstanceGrid(index_sizes=(1, 2, 3), factor_source="all-filters", filter_source="all"),
        _filtered_factor_instances,
        _p42_check,
    )
)
_register(
    _Prop(
        "P4.3",
        "the box product filter is the smallest filter whose projections are the factor filters",
        (_NOTE_COFINITE,),
        InstanceGrid(index_sizes=(2,), factor_source="all-filters", filter_source="trivial"),
        _p43_instances,
        _p43_check,
    )
)
_register(
    _Prop(
        "P4.5",
        "the neighborhood filter of a product point is the product filter of the "
        "factor neighborhood filters",
        (),
        InstanceGrid(index_sizes=(2,), factor_source="all-topologies", factor_universe_max=3,
                     filter_source="all"),
        _p45_instances,
        _p45_check,
    )
)
_register(
    _Prop(
        "P5.2",
        "boxes of factor entourages with accepted distinguished indexes form a uniformity base",
        (),
        InstanceGrid(index_sizes=(2,), factor_source="all-uniformity-bases", filter_source="all"),
        _uniformity_instances,
        _p52_check,
    )
)
_register(
    _Prop(
        "P5.ind",
        "the product uniformity induces the product topology of the induced factor topologies",
        (),
        InstanceGrid(index_sizes=(2,), factor_source="all-uniformity-bases", filter_source="all"),
        _uniformity_instances,
        _p5ind_check,
    )
)

OUT_OF_SCOPE: dict[str, str] = {
    "C2.11": "comparability of Hausdorff compact topologies has no non-degenerate finite "
             "instance: every finite Hausdorff space is already discrete",
    "P2.12": "needs a saturated filter distinct from the cofinite filter; on a finite "
             "index set both collapse to the trivial filter",
    "C2.13": "needs a free ultrafilter; none exists on a finite index set",
    "L2.14": "box products over infinitely many nontrivial factors are non-compact; "
             "every finite space is compact",
    "P2.15": "needs a saturated filter distinct from the cofinite filter and an "
             "infinite index set",
}


def proposition_catalog() -> dict[str, dict]:
    """All known proposition ids with status and description."""
    out: dict[str, dict] = {}
    for pid, prop in sorted(_PROPS.items()):
        out[pid] = {"status": "verifiable", "description": prop.description}
    for pid, reason in sorted(OUT_OF_SCOPE.items()):
        out[pid] = {"status": "out-of-scope", "description": reason}
    return out


def _run(
    check_id: str,
    description: str,
    notes: tuple[str, ...],
    grid: InstanceGrid,
    instances: Iterator[dict],
    check: Callable[[dict], tuple[bool, dict | None]],
) -> PropositionReport:
    checked = 0
    failure: dict | None = None
    exhibit: dict | None = None
    complete = True
    start = time.monotonic()
    for payload in instances:
        if grid.max_instances is not None and checked >= grid.max_instances:
            complete = False
            break
        if grid.max_seconds is not None and time.monotonic() - start > grid.max_seconds:
            complete = False
            break
        ok, detail = check(payload)
        checked += 1
        if not ok:
            failure = {**payload, "detail": detail}
            break
        if detail is not None and exhibit is None:
            exhibit = {**payload, "detail": detail}
    passed = failure is None
    witness = failure if failure is not None else exhibit
    return PropositionReport(
        prop_id=check_id,
        description=description,
        grid=grid,
        checked=checked,
        passed=passed,
        complete=complete,
        witness=witness,
        degenerate_notes=notes,
    )


def verify_proposition(prop_id: str, grid: InstanceGrid | None = None) -> PropositionReport:
    """Walk the grid for one proposition; stop at the first counterexample."""
    if prop_id in OUT_OF_SCOPE:
        raise InputError(
            f"proposition {prop_id} is out of scope: {OUT_OF_SCOPE[prop_id]}"
        )
    prop = _PROPS.get(prop_id)
    if prop is None:
        raise InputError(
            f"unknown proposition id {prop_id!r}; known ids: {sorted(_PROPS) + sorted(OUT_OF_SCOPE)}"
        )
    grid = grid if grid is not None else prop.default_grid
    return _run(
        prop.prop_id, prop.description, prop.notes, grid, prop.instances(grid), prop.check
    )


# ---------------------------------------------------------------------------
# counterexample search over a catalog of false generalizations


@dataclass(frozen=True)
class _Claim:
    claim_id: str
    description: str
    notes: tuple[str, ...]
    default_grid: InstanceGrid
    instances: Callable[[InstanceGrid], Iterator[dict]]
    holds: Callable[[dict], tuple[bool, dict | None]]


def _claim_hausdorff_holds(payload: dict) -> tuple[bool, dict | None]:
    spec = serialize.parse_instance(payload["instance"])
    if not all(f.topology.is_hausdorff() for f in spec.factors):  # type: ignore[union-attr]
        return True, None  # hypothesis not met, nothing to refute
    t = f_topology(spec)
    if t.is_hausdorff():
        return True, None
    mins = [t.minimal_neighborhood(x) for x in range(spec.indexing.total)]
    for x in range(len(mins)):
        for y in range(x + 1, len(mins)):
            if not (mins[x] & mins[y]).is_empty:
                return False, {
                    "inseparable_pair": [
                        serialize.product_point_label(x, spec),
                        serialize.product_point_label(y, spec),
                    ]
                }
    return False, None


def _claim_projection_identity_holds(payload: dict) -> tuple[bool, dict | None]:
    spec = serialize.parse_instance(payload["instance"])
    ffil = f_filter(spec)
    idx = spec.indexing
    for i, f in enumerate(spec.factors):
        assert f.filter is not None
        proj = pushforward(projection_map(i, idx), f.universe.size, ffil)
        if proj != f.filter:
            return False, {
                "factor": i,
                "projected_filter": serialize.filter_to_dict(proj, f.universe),
                "factor_filter": serialize.filter_to_dict(f.filter, f.universe),
            }
    return True, None


def _claim_equalizer_dense_holds(payload: dict) -> tuple[bool, dict | None]:
    spec = serialize.parse_instance(payload["instance"])
    t = f_topology(spec)
    for x in range(spec.indexing.total):
        if not t.is_dense(equalizer(spec, x)):
            return False, {
                "non_dense_equalizer_at": serialize.product_point_label(x, spec)
            }
    return True, None


_CLAIMS: dict[str, _Claim] = {
    "hausdorff-for-all-filters": _Claim(
        "hausdorff-for-all-filters",
        "a product of Hausdorff factors is Hausdorff for every index filter",
        ("false in general; fails at every non-saturated filter",),
        InstanceGrid(index_sizes=(2,), factor_source="fixed", factor_preset="discrete2",
                     filter_source="all"),
        _p31_instances,
        _claim_hausdorff_holds,
    ),
    "projection-filter-identity-for-all-filters": _Claim(
        "projection-filter-identity-for-all-filters",
        "projections of the product filter equal the factor filters for every index filter",
        ("false without saturation: a pinned coordinate projects to the indiscrete filter",),
        InstanceGrid(index_sizes=(2,), factor_source="all-filters", filter_source="all"),
        _filtered_factor_instances,
        _claim_projection_identity_holds,
    ),
    "equalizer-dense-for-all-proper-filters": _Claim(
        "equalizer-dense-for-all-proper-filters",
        "equalizers are dense for every proper index filter (true on every grid; "
        "serves as the negative control)",
        (),
        InstanceGrid(index_sizes=(2, 3), factor_source="fixed", factor_preset="discrete2",
                     filter_source="proper"),
        _p31_instances,
        _claim_equalizer_dense_holds,
    ),
}


def claim_catalog() -> dict[str, str]:
    return {cid: c.description for cid, c in sorted(_CLAIMS.items())}


def search_counterexample(claim_id: str, grid: InstanceGrid | None = None) -> PropositionReport:
    """Scan the grid for the canonical-order-first instance refuting a claim.

    The report's witness is the refuting instance; passed means the claim
    survived the whole grid (for a search, finding a witness is the
    interesting outcome).
    """
    claim = _CLAIMS.get(claim_id)
    if claim is None:
        raise InputError(
            f"unknown claim id {claim_id!r}; known ids: {sorted(_CLAIMS)}"
        )
    grid = grid if grid is not None else claim.default_grid
    return _run(
        claim.claim_id, claim.description, claim.notes, grid, claim.instances(grid), claim.holds
    )


def replay_witness(check_id: str, witness: dict) -> tuple[bool, dict | None]:
    """Re-run the single-instance check on a serialized witness."""
    payload = {k: v for k, v in witness.items() if k != "detail"}
    if check_id in _PROPS:
        return _PROPS[check_id].check(payload)
    if check_id in _CLAIMS:
        return _CLAIMS[check_id].holds(payload)
    raise InputError(f"unknown proposition or claim id {check_id!r}")
