"""Relations, uniformities, entourage balls, induced topologies, product uniformities.

A relation on an n-point universe is a subset of the pair universe of size
n*n, pair (x, y) at bit x*n + y. On a finite set the intersection of a valid
uniformity base is a single minimal entourage, and the base axioms force it
to be an equivalence relation; its rows are the minimal balls that carry the
induced topology.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import isqrt
from typing import Sequence

from .foundations import (
    InputError,
    ProductIndexing,
    ResourceLimitError,
    SetFamily,
    SubsetMask,
)
from .fproduct import Box, ProductSpec, box_delta
from .topology import Topology, generate_topology

_ROW_MASK_CACHE: dict[int, int] = {}


def _row_mask(n: int) -> int:
    if n not in _ROW_MASK_CACHE:
        _ROW_MASK_CACHE[n] = (1 << n) - 1
    return _ROW_MASK_CACHE[n]


@dataclass(frozen=True)
class Relation:
    """A binary relation on range(point_count), stored on the squared universe."""

    point_count: int
    pairs: SubsetMask

    def __post_init__(self) -> None:
        if self.point_count < 1:
            raise InputError("relation needs at least one point")
        if self.pairs.universe_size != self.point_count * self.point_count:
            raise InputError("pair mask must live on the squared universe")

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "Relation":
        bits = 0
        for x, y in pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise InputError(f"pair ({x}, {y}) out of range for {n} points")
            bits |= 1 << (x * n + y)
        return cls(n, SubsetMask(n * n, bits))

    @classmethod
    def full(cls, n: int) -> "Relation":
        return cls(n, SubsetMask.full(n * n))

    def contains(self, x: int, y: int) -> bool:
        n = self.point_count
        return bool(self.pairs.bits >> (x * n + y) & 1)

    def row_bits(self, x: int) -> int:
        n = self.point_count
        return self.pairs.bits >> (x * n) & _row_mask(n)

    def pair_list(self) -> tuple[tuple[int, int], ...]:
        n = self.point_count
        return tuple((b // n, b % n) for b in self.pairs)


def diagonal(n: int) -> Relation:
    return Relation.from_pairs(n, ((x, x) for x in range(n)))


def inverse(g: Relation) -> Relation:
    return Relation.from_pairs(g.point_count, ((y, x) for x, y in g.pair_list()))


def compose(g: Relation, h: Relation) -> Relation:
    """Pairs (x, z) such that some y has (x, y) in g and (y, z) in h."""
    if g.point_count != h.point_count:
        raise InputError("relations live on different universes")
    n = g.point_count
    h_rows = [h.row_bits(y) for y in range(n)]
    bits = 0
    for x in range(n):
        grow = g.row_bits(x)
        zrow = 0
        y = 0
        while grow:
            if grow & 1:
                zrow |= h_rows[y]
            grow >>= 1
            y += 1
        bits |= zrow << (x * n)
    return Relation(n, SubsetMask(n * n, bits))


def entourage_ball(u: Relation, x: int) -> SubsetMask:
    """The row of u at x: all points u-near to x."""
    if not 0 <= x < u.point_count:
        raise InputError(f"point {x} out of range")
    return SubsetMask(u.point_count, u.row_bits(x))


def _relations_of(fam: SetFamily) -> tuple[int, list[Relation]]:
    n = isqrt(fam.universe_size)
    if n * n != fam.universe_size:
        raise InputError("a relation family must live on a squared universe")
    return n, [Relation(n, m) for m in fam.members]


def validate_uniformity_base(fam: SetFamily) -> bool:
    """The four base conditions: diagonal inside each member, inverses and
    composition squares bounded by members, and downward directedness."""
    if len(fam) == 0:
        return False
    n, rels = _relations_of(fam)
    diag = diagonal(n).pairs.bits
    for r in rels:
        if diag & ~r.pairs.bits:
            return False
    for u in rels:
        inv_bits = inverse(u).pairs.bits
        if not any(b.pairs.bits & ~inv_bits == 0 for b in rels):
            return False
    for u in rels:
        if not any(compose(v, v).pairs.bits & ~u.pairs.bits == 0 for v in rels):
            return False
    for u, v in itertools.combinations(rels, 2):
        meet = u.pairs.bits & v.pairs.bits
        if not any(w.pairs.bits & ~meet == 0 for w in rels):
            return False
    return True


@dataclass(frozen=True)
class Uniformity:
    """A uniformity given by a validated base of entourages."""

    point_count: int
    base: SetFamily

    def __post_init__(self) -> None:
        if self.base.universe_size != self.point_count * self.point_count:
            raise InputError("uniformity base must live on the squared universe")
        if not validate_uniformity_base(self.base):
            raise InputError("family is not a uniformity base")

    def minimal_entourage(self) -> Relation:
        """Intersection of the base; on a finite set this is an equivalence relation."""
        bits = (1 << self.base.universe_size) - 1
        for m in self.base.members:
            bits &= m.bits
        return Relation(self.point_count, SubsetMask(self.base.universe_size, bits))

    def members(self) -> SetFamily:
        """All entourages: supersets of base members. Exponential; small universes only."""
        sq = self.base.universe_size
        if sq > 16:
            raise ResourceLimitError("entourage materialization capped at 4 points")
        base_bits = [m.bits for m in self.base.members]
        out = [
            SubsetMask(sq, bits)
            for bits in range(1 << sq)
            if any(b & ~bits == 0 for b in base_bits)
        ]
        return SetFamily.of(sq, out)

    def member(self, rel: Relation) -> bool:
        if rel.point_count != self.point_count:
            raise InputError("membership query on the wrong universe")
        return any(b.bits & ~rel.pairs.bits == 0 for b in self.base.members)


def generate_uniformity(base: SetFamily) -> Uniformity:
    n, _ = _relations_of(base)
    return Uniformity(n, base)


def induced_topology(u: Uniformity) -> Topology:
    """Opens are the sets containing an entourage ball around each point.

    The minimal entourage is an equivalence relation, so its rows (the
    minimal balls) partition the space and form a base.
    """
    m = u.minimal_entourage()
    n = u.point_count
    balls = {m.row_bits(x) for x in range(n)}
    return generate_topology(SetFamily.of(n, (SubsetMask(n, b) for b in balls)))


def is_uniformly_continuous(f_map: Sequence[int], u_dom: Uniformity, u_cod: Uniformity) -> bool:
    """For each codomain entourage some domain entourage maps pairwise into it."""
    if len(f_map) != u_dom.point_count:
        raise InputError("map is not total on the domain universe")
    for v in f_map:
        if not 0 <= v < u_cod.point_count:
            raise InputError(f"map value {v} out of codomain range")
    m = u_cod.point_count
    for v_rel in u_cod.base:
        v_bits = v_rel.bits
        ok = False
        for u_rel in u_dom.base:
            rel = Relation(u_dom.point_count, u_rel)
            if all(
                v_bits >> (f_map[x] * m + f_map[y]) & 1
                for x, y in rel.pair_list()
            ):
                ok = True
                break
        if not ok:
            return False
    return True


def enumerate_uniformity_bases(n: int) -> tuple[SetFamily, ...]:
    """All valid uniformity bases on an n-point universe; n <= 2 (exponential scan)."""
    if not 1 <= n <= 2:
        raise InputError("uniformity-base enumeration supports 1 <= n <= 2")
    sq = n * n
    diag_bits = diagonal(n).pairs.bits
    candidates = [
        bits for bits in range(1 << sq) if diag_bits & ~bits == 0
    ]
    out = []
    for r in range(1, len(candidates) + 1):
        for combo in itertools.combinations(candidates, r):
            fam = SetFamily.of(sq, (SubsetMask(sq, b) for b in combo))
            if validate_uniformity_base(fam):
                out.append(fam)
    out.sort(key=lambda fam: tuple(m.bits for m in fam.members))
    return tuple(out)


def squared_indexing(idx: ProductIndexing) -> ProductIndexing:
    """Mixed-radix coding of the factor-wise pair product; digit i holds (x_i, y_i)."""
    return ProductIndexing(tuple(s * s for s in idx.factor_sizes))


def product_pair_to_pair_code(x_code: int, y_code: int, idx: ProductIndexing) -> int:
    """Identify a pair of product points with one point of the pair product."""
    xs = idx.decode_point(x_code)
    ys = idx.decode_point(y_code)
    digits = tuple(x * s + y for x, y, s in zip(xs, ys, idx.factor_sizes))
    return squared_indexing(idx).encode_point(digits)


def pair_code_to_product_pair(q: int, idx: ProductIndexing) -> tuple[int, int]:
    """Inverse identification: split a pair-product point into two product points."""
    digits = squared_indexing(idx).decode_point(q)
    xs, ys = [], []
    for d, s in zip(digits, idx.factor_sizes):
        xs.append(d // s)
        ys.append(d % s)
    return idx.encode_point(xs), idx.encode_point(ys)


def _factor_uniformity_bases(spec: ProductSpec) -> list[SetFamily]:
    out = []
    for f in spec.factors:
        if f.uniformity_base is None:
            raise InputError("every factor needs a uniformity base for the product uniformity")
        if not validate_uniformity_base(f.uniformity_base):
            raise InputError("a factor uniformity base is invalid")
        out.append(f.uniformity_base)
    return out


def f_uniformity_base(spec: ProductSpec) -> SetFamily:
    """Relations on the product from boxes of factor entourages with accepted delta.

    Each factor base is augmented with the full square (a base may omit it,
    yet every uniformity contains it and delta needs it to be realizable),
    then a box is kept when its delta belongs to the index filter. Boxes are
    carried across the pair-coordinate identification explicitly.
    """
    fil = spec._require_index_filter()
    idx = spec.indexing
    total = idx.total
    sq_idx = squared_indexing(idx)  # also enforces the squared-size cap
    factor_bases = _factor_uniformity_bases(spec)
    member_lists = []
    for f, base in zip(spec.factors, factor_bases):
        s = f.universe.size
        masks = set(base.members) | {SubsetMask.full(s * s)}
        member_lists.append(sorted(masks, key=lambda m: m.bits))
    relations = []
    for choice in itertools.product(*member_lists):
        box = Box(choice)
        if not fil.member_bits(box_delta(box).bits):
            continue
        bits = 0
        for q in range(sq_idx.total):
            digits = sq_idx.decode_point(q)
            if all(digits[i] in choice[i] for i in range(len(choice))):
                x_code, y_code = pair_code_to_product_pair(q, idx)
                bits |= 1 << (x_code * total + y_code)
        relations.append(SubsetMask(total * total, bits))
    return SetFamily.of(total * total, relations)


def f_uniformity(spec: ProductSpec) -> Uniformity:
    """The product uniformity generated by the accepted entourage boxes."""
    base = f_uniformity_base(spec)
    return generate_uniformity(base)
