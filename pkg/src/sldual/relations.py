"""Binary relations between finite spaces and their box calculus.

Recognition results (meet-relation, adjoint-relation) are computed once
and cached on the relation value; operations that need them demand the
certificate instead of re-deriving it.

Composition uses the closure of the relational image; in test builds the
result is asserted equal to the literal universally-quantified form on
every call.
"""

from typing import Optional, Tuple

from .bitset import bit, bits, is_subset, to_list
from .errors import CarrierMismatch, CertificationError, InvalidStructure
from .order import FinitePoset, MonotoneMap
from .semilattice import SemilatticeHom, check_hom
from .sspace import FiniteSpace


class BinaryRelation:
    """A relation between the points of two finite spaces.

    Stored row-wise: ``rows[x]`` is the bitmask of targets related to the
    source point ``x``.
    """

    __slots__ = ("source", "target", "rows", "_cert")

    def __init__(self, source: FiniteSpace, target: FiniteSpace, rows):
        rows = tuple(int(r) for r in rows)
        if len(rows) != source.points:
            raise InvalidStructure("row count does not match the source", law="carrier")
        for x, r in enumerate(rows):
            if r & ~target.full:
                raise InvalidStructure(
                    "row %d references points outside the target" % x,
                    law="carrier",
                    witness=(x,),
                )
        self.source = source
        self.target = target
        self.rows = rows
        self._cert = {}

    @classmethod
    def from_pairs(cls, source: FiniteSpace, target: FiniteSpace, pairs) -> "BinaryRelation":
        rows = [0] * source.points
        for x, y in pairs:
            rows[x] |= bit(y)
        return cls(source, target, rows)

    def row(self, x: int) -> int:
        return self.rows[x]

    def has(self, x: int, y: int) -> bool:
        return bool(self.rows[x] >> y & 1)

    def pairs(self):
        return [(x, y) for x in range(self.source.points) for y in bits(self.rows[x])]

    def converse(self) -> "BinaryRelation":
        rows = [0] * self.target.points
        for x in range(self.source.points):
            for y in bits(self.rows[x]):
                rows[y] |= bit(x)
        return BinaryRelation(self.target, self.source, rows)

    def __eq__(self, other):
        return (
            isinstance(other, BinaryRelation)
            and self.source == other.source
            and self.target == other.target
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash(("BinaryRelation", self.rows))

    def __repr__(self):
        return "BinaryRelation(%d -> %d points)" % (self.source.points, self.target.points)


def dual_order_relation(space: FiniteSpace) -> BinaryRelation:
    """The dual of the specialization order, the identity morphism."""
    poset = space.specialization_dual()
    return BinaryRelation(space, space, poset.rows)


def box(t: BinaryRelation, u: int) -> int:
    """Points whose fiber under ``t`` is contained in ``u``."""
    out = 0
    for x in range(t.source.points):
        if is_subset(t.rows[x], u):
            out |= bit(x)
    return out


def meet_relation_witness(t: BinaryRelation) -> Optional[dict]:
    """First failure of either meet-relation condition, or None."""
    t.source.require_verified()
    t.target.require_verified()
    s_source = set(t.source.s_family())
    for u in t.target.s_family():
        if box(t, u) not in s_source:
            return {"condition": "box", "u": to_list(u)}
    for x in range(t.source.points):
        if t.target.closure(t.rows[x]) != t.rows[x]:
            return {"condition": "fiber-closure", "point": x}
    return None


def is_meet_relation(t: BinaryRelation) -> bool:
    if "meet" not in t._cert:
        w = meet_relation_witness(t)
        t._cert["meet"] = w is None
        t._cert["meet_witness"] = w
    return t._cert["meet"]


def require_meet(t: BinaryRelation) -> None:
    if not is_meet_relation(t):
        raise CertificationError(
            "relation is not a meet-relation: %r" % (t._cert["meet_witness"],)
        )


def _star_rows_closure(t: BinaryRelation, r: BinaryRelation) -> Tuple[int, ...]:
    rows = []
    for x in range(r.source.points):
        image = 0
        for y in bits(r.rows[x]):
            image |= t.rows[y]
        rows.append(t.target.closure(image))
    return tuple(rows)


def _star_rows_literal(t: BinaryRelation, r: BinaryRelation) -> Tuple[int, ...]:
    """The composite by the literal definition: z is related to x when z
    lies in every subbasic closed set covering the relational image."""
    s3 = t.target.s_family()
    rows = []
    for x in range(r.source.points):
        image = 0
        for y in bits(r.rows[x]):
            image |= t.rows[y]
        covers = [u for u in s3 if is_subset(image, u)]
        row = 0
        for z in range(t.target.points):
            if all(u >> z & 1 for u in covers):
                row |= bit(z)
        rows.append(row)
    return tuple(rows)


def star_compose(t: BinaryRelation, r: BinaryRelation) -> BinaryRelation:
    """The composite meet-relation of ``r`` followed by ``t``."""
    if r.target != t.source:
        raise CarrierMismatch("relations do not compose")
    require_meet(t)
    require_meet(r)
    rows = _star_rows_closure(t, r)
    assert rows == _star_rows_literal(t, r)
    return BinaryRelation(r.source, t.target, rows)


def f_family(t: BinaryRelation, u: int) -> Tuple[int, ...]:
    """Subbasic closed sets whose box contains ``u``."""
    return tuple(v for v in t.source.s_family() if is_subset(u, box(t, v)))


def a_relation_witness(t: BinaryRelation) -> Optional[dict]:
    if t.source != t.target:
        raise CarrierMismatch("adjoint-relations are endo-relations")
    t.source.require_verified()
    w = meet_relation_witness(t)
    if w is not None:
        return {"condition": "meet", "inner": w}
    s = set(t.source.s_family())
    table = {}
    for u in t.source.s_family():
        inter = t.source.full
        for v in f_family(t, u):
            inter &= v
        if box(t, u) not in s:
            return {"condition": "box", "u": to_list(u)}
        if inter not in s:
            return {"condition": "adjoint-intersection", "u": to_list(u)}
        table[u] = inter
    t._cert["box_star"] = table
    return None


def is_a_relation(t: BinaryRelation) -> bool:
    """Recognize adjoint-relations.

    Certification folds in the meet-relation conditions: on finite spaces
    the adjoint-intersection condition alone cannot separate a relation
    from the meet-relation with the same box operator, and every certified
    adjoint-relation must remain a meet-relation.
    """
    if "a_relation" not in t._cert:
        w = a_relation_witness(t)
        t._cert["a_relation"] = w is None
        t._cert["a_witness"] = w
    return t._cert["a_relation"]


def require_a_relation(t: BinaryRelation) -> None:
    if not is_a_relation(t):
        raise CertificationError(
            "relation is not an adjoint-relation: %r" % (t._cert["a_witness"],)
        )


def box_star(t: BinaryRelation, u: int) -> int:
    """The intersection of the subbasic closed sets whose box covers ``u``.

    Forms the left adjoint of ``box`` on the subbasic closed sets once the
    relation is certified as an adjoint-relation.
    """
    require_a_relation(t)
    table = t._cert.get("box_star", {})
    if u in table:
        return table[u]
    inter = t.source.full
    for v in f_family(t, u):
        inter &= v
    return inter


def is_compatible(m: BinaryRelation, t_x: BinaryRelation, t_y: BinaryRelation) -> bool:
    """Whether ``m`` commutes with the two endo-relations under composition."""
    if m.source != t_x.source or t_x.source != t_x.target:
        raise CarrierMismatch("first endo-relation must live on the source of m")
    if m.target != t_y.source or t_y.source != t_y.target:
        raise CarrierMismatch("second endo-relation must live on the target of m")
    require_meet(m)
    require_meet(t_x)
    require_meet(t_y)
    return star_compose(m, t_x) == star_compose(t_y, m)


def box_hom(m: BinaryRelation) -> SemilatticeHom:
    """The box operator of a meet-relation as a semilattice hom between
    the closed-set algebras, target side to source side."""
    s_tgt_alg, s_tgt = m.target.semilattice()
    s_src_alg, s_src = m.source.semilattice()
    idx = {u: i for i, u in enumerate(s_src)}
    mapping = [idx[box(m, v)] for v in s_tgt]
    return SemilatticeHom(s_tgt_alg, s_src_alg, mapping)


def _box_is_adjoint_hom(m: BinaryRelation, t_x: BinaryRelation, t_y: BinaryRelation) -> bool:
    """Whether the box operator of ``m`` preserves both adjoint operators
    induced by the two endo-relations."""
    h = box_hom(m)
    _, s_y = m.target.semilattice()
    _, s_x = m.source.semilattice()
    idx_y = {u: i for i, u in enumerate(s_y)}
    idx_x = {u: i for i, u in enumerate(s_x)}
    left_y = [idx_y[box_star(t_y, v)] for v in s_y]
    right_y = [idx_y[box(t_y, v)] for v in s_y]
    left_x = [idx_x[box_star(t_x, v)] for v in s_x]
    right_x = [idx_x[box(t_x, v)] for v in s_x]
    return check_hom(h, "slata", (left_y, right_y), (left_x, right_x))


def is_adjoint_preserving(m: BinaryRelation, t_x: BinaryRelation, t_y: BinaryRelation) -> bool:
    """Morphism test between spaces carrying adjoint-relations.

    Three conditions: ``m`` is a meet-relation, it commutes with the endo
    relations, and for every pair (u, v) of closed sets: whenever the box
    of v under m is contained in the box of u under the source relation,
    the box of the left-adjoint value of v is contained in u. The result
    is asserted equal to the box operator being a hom of adjoint pairs.
    """
    require_a_relation(t_x)
    require_a_relation(t_y)
    if m.source != t_x.source or m.target != t_y.source:
        raise CarrierMismatch("relation does not connect the two spaces")
    if not is_meet_relation(m):
        return False
    compatible = is_compatible(m, t_x, t_y)
    transfer = True
    for u in m.source.s_family():
        for v in m.target.s_family():
            if is_subset(box(m, v), box(t_x, u)):
                if not is_subset(box(m, box_star(t_y, v)), u):
                    transfer = False
                    break
        if not transfer:
            break
    ok = compatible and transfer
    assert ok == _box_is_adjoint_hom(m, t_x, t_y)
    return ok


def adjoint_preserving_pointwise(
    m: BinaryRelation, t_x: BinaryRelation, t_y: BinaryRelation
) -> bool:
    """Alternative per-point reading of the transfer condition.

    Strictly stronger than the aggregate reading used by
    ``is_adjoint_preserving``; kept for cross-testing only.
    """
    require_a_relation(t_x)
    require_a_relation(t_y)
    if not is_meet_relation(m) or not is_compatible(m, t_x, t_y):
        return False
    for x in range(m.source.points):
        for u in m.source.s_family():
            for v in m.target.s_family():
                if is_subset(m.rows[x], v) and not is_subset(t_x.rows[x], u):
                    continue
                if is_subset(m.rows[x], box_star(t_y, v)) and not u >> x & 1:
                    return False
    return True


class RelSSpace:
    """A verified space together with a certified adjoint-relation."""

    __slots__ = ("space", "t")

    def __init__(self, space: FiniteSpace, t: BinaryRelation):
        if t.source != space or t.target != space:
            raise CarrierMismatch("relation does not live on the space")
        space.require_verified()
        require_a_relation(t)
        self.space = space
        self.t = t

    def __eq__(self, other):
        return (
            isinstance(other, RelSSpace)
            and self.space == other.space
            and self.t == other.t
        )

    def __hash__(self):
        return hash(("RelSSpace", self.space, self.t))

    def __repr__(self):
        return "RelSSpace(points=%d)" % self.space.points


def adjunction_on_closed_sets(t: BinaryRelation):
    """The (box_star, box) pair as monotone maps on the closed-set poset."""
    require_a_relation(t)
    s = t.source.s_family()
    idx = {u: i for i, u in enumerate(s)}
    rows = []
    for u in s:
        m = 0
        for j, v in enumerate(s):
            if is_subset(u, v):
                m |= bit(j)
        rows.append(m)
    poset = FinitePoset(rows)
    left = MonotoneMap(poset, poset, [idx[box_star(t, u)] for u in s])
    right = MonotoneMap(poset, poset, [idx[box(t, u)] for u in s])
    return left, right
