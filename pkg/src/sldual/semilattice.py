"""Finite meet-semilattices with a greatest element.

Covers the algebraic side of the workbench: meet tables and their law
checker, filters and order-ideals, homomorphism kinds, unary-operator
classes (monotone, modal) and adjoint pairs on a single carrier.

The derived order is ``a <= b iff a = a /\\ b``. Filters of a finite
semilattice are enumerated by the literal definition (all subsets are
scanned); any faster characterisation must be validated against that scan.
"""

from typing import Optional, Sequence, Tuple

from .bitset import bit, bits, full_mask, is_subset
from .errors import CarrierMismatch, InvalidStructure
from .order import FinitePoset, MonotoneMap, adjunction_witness
from .reports import LawCheck, ValidationReport


def validate_semilattice(meet: Sequence[Sequence[int]], top: int) -> ValidationReport:
    """Check a raw meet table against the semilattice laws.

    Reports per-law pass/fail with a witness pair or triple on failure.
    """
    meet = tuple(tuple(row) for row in meet)
    n = len(meet)
    checks = []

    carrier_witness = None
    if n == 0:
        carrier_witness = {"reason": "empty carrier"}
    elif not 0 <= top < n:
        carrier_witness = {"reason": "top out of range", "top": top}
    else:
        for a, row in enumerate(meet):
            if len(row) != n:
                carrier_witness = {"reason": "table is not square", "row": a}
                break
            for b, v in enumerate(row):
                if not 0 <= v < n:
                    carrier_witness = {"reason": "entry out of range", "pair": [a, b]}
                    break
            if carrier_witness:
                break
    checks.append(LawCheck("carrier", carrier_witness is None, carrier_witness))
    if carrier_witness is not None:
        return ValidationReport(tuple(checks))

    w = next(((a,) for a in range(n) if meet[a][a] != a), None)
    checks.append(LawCheck("idempotent", w is None, None if w is None else {"witness": list(w)}))

    w = next(
        ((a, b) for a in range(n) for b in range(n) if meet[a][b] != meet[b][a]), None
    )
    checks.append(LawCheck("commutative", w is None, None if w is None else {"witness": list(w)}))

    w = None
    for a in range(n):
        for b in range(n):
            ab = meet[a][b]
            for c in range(n):
                if meet[ab][c] != meet[a][meet[b][c]]:
                    w = (a, b, c)
                    break
            if w:
                break
        if w:
            break
    checks.append(LawCheck("associative", w is None, None if w is None else {"witness": list(w)}))

    w = next(((a,) for a in range(n) if meet[a][top] != a), None)
    checks.append(LawCheck("unit", w is None, None if w is None else {"witness": list(w)}))

    order_ok = all(c.passed for c in checks)
    if order_ok:
        # The four laws above force the derived relation to be a partial
        # order with greatest element; building the poset re-checks that.
        try:
            _poset_of(meet, n)
        except InvalidStructure as exc:
            order_ok = False
            checks.append(LawCheck("derived-order", False, {"reason": str(exc)}))
        else:
            checks.append(LawCheck("derived-order", True, None))
    else:
        checks.append(LawCheck("derived-order", False, {"reason": "earlier law failed"}))
    return ValidationReport(tuple(checks))


def _poset_of(meet, n) -> FinitePoset:
    rows = []
    for a in range(n):
        m = 0
        for b in range(n):
            if meet[a][b] == a:
                m |= bit(b)
        rows.append(m)
    return FinitePoset(rows)


class FiniteSemilattice:
    """A finite meet-semilattice with top, validated at construction."""

    __slots__ = ("size", "meet", "top", "_cache")

    def __init__(self, meet: Sequence[Sequence[int]], top: int):
        meet = tuple(tuple(row) for row in meet)
        report = validate_semilattice(meet, top)
        if not report.passed:
            fail = report.first_failure()
            raise InvalidStructure(
                "not a semilattice: %s law fails (%r)" % (fail.law, fail.witness),
                law=fail.law,
                witness=fail.witness,
            )
        self.size = len(meet)
        self.meet = meet
        self.top = top
        self._cache = {}

    @classmethod
    def chain(cls, n: int) -> "FiniteSemilattice":
        return cls([[min(a, b) for b in range(n)] for a in range(n)], n - 1)

    @classmethod
    def from_intersection_family(cls, family) -> "FiniteSemilattice":
        """Build from a family of bitmask sets closed under intersection.

        The family must contain a member including every other member;
        that member becomes the top. Elements are indexed in sorted mask
        order, so equal families give equal semilattices.
        """
        fam = tuple(sorted(set(family)))
        index = {m: i for i, m in enumerate(fam)}
        union = 0
        for m in fam:
            union |= m
        top_mask = None
        for m in fam:
            if is_subset(union, m):
                top_mask = m
                break
        if top_mask is None:
            raise InvalidStructure("family has no greatest member", law="unit")
        meet = []
        for a in fam:
            row = []
            for b in fam:
                ab = a & b
                if ab not in index:
                    raise InvalidStructure(
                        "family is not closed under intersection", law="closure"
                    )
                row.append(index[ab])
            meet.append(row)
        sl = cls(meet, index[top_mask])
        sl._cache["family"] = fam
        return sl

    def meet_of(self, a: int, b: int) -> int:
        return self.meet[a][b]

    def leq(self, a: int, b: int) -> bool:
        return self.meet[a][b] == a

    def poset(self) -> FinitePoset:
        if "poset" not in self._cache:
            self._cache["poset"] = _poset_of(self.meet, self.size)
        return self._cache["poset"]

    def bottom(self) -> int:
        b = self.top
        for a in range(self.size):
            b = self.meet[b][a]
        return b

    def filters(self) -> Tuple[int, ...]:
        """All filters (meet-closed upsets containing top), as sorted masks."""
        if "filters" not in self._cache:
            out = []
            for m in range(1, full_mask(self.size) + 1):
                if not m >> self.top & 1:
                    continue
                members = list(bits(m))
                if not self.poset().is_upset(m):
                    continue
                if all(m >> self.meet[a][b] & 1 for a in members for b in members):
                    out.append(m)
            self._cache["filters"] = tuple(sorted(out))
        return self._cache["filters"]

    def irreducible_filters(self) -> Tuple[int, ...]:
        """Proper filters that are not the intersection of two other filters."""
        if "irreducible" not in self._cache:
            fis = self.filters()
            full = full_mask(self.size)
            out = []
            for f in fis:
                if f == full:
                    continue
                reducible = any(
                    f1 != f and f2 != f and f1 & f2 == f for f1 in fis for f2 in fis
                )
                if not reducible:
                    out.append(f)
            self._cache["irreducible"] = tuple(sorted(out))
        return self._cache["irreducible"]

    def order_ideals(self) -> Tuple[int, ...]:
        """All non-empty directed downsets, as sorted masks."""
        if "ideals" not in self._cache:
            poset = self.poset()
            out = []
            for m in range(1, full_mask(self.size) + 1):
                if not poset.is_downset(m):
                    continue
                members = list(bits(m))
                if all(
                    any(poset.leq(a, c) and poset.leq(b, c) for c in members)
                    for a in members
                    for b in members
                ):
                    out.append(m)
            self._cache["ideals"] = tuple(sorted(out))
        return self._cache["ideals"]

    def __eq__(self, other):
        return (
            isinstance(other, FiniteSemilattice)
            and self.meet == other.meet
            and self.top == other.top
        )

    def __hash__(self):
        return hash(("FiniteSemilattice", self.meet, self.top))

    def __repr__(self):
        return "FiniteSemilattice(size=%d)" % self.size


def enumerate_filters(algebra: FiniteSemilattice, irreducible_only: bool = False):
    return algebra.irreducible_filters() if irreducible_only else algebra.filters()


def enumerate_order_ideals(algebra: FiniteSemilattice):
    return algebra.order_ideals()


def is_monotone_op(algebra: FiniteSemilattice, op: Sequence[int]) -> bool:
    n = algebra.size
    if len(op) != n or any(not 0 <= v < n for v in op):
        return False
    return all(
        algebra.leq(op[a], op[b])
        for a in range(n)
        for b in range(n)
        if algebra.leq(a, b)
    )


def is_modal_op(algebra: FiniteSemilattice, op: Sequence[int]) -> bool:
    n = algebra.size
    if len(op) != n or any(not 0 <= v < n for v in op):
        return False
    if op[algebra.top] != algebra.top:
        return False
    return all(
        op[algebra.meet[a][b]] == algebra.meet[op[a]][op[b]]
        for a in range(n)
        for b in range(n)
    )


class MonotoneSemilattice:
    """A semilattice with an order-preserving unary operator."""

    __slots__ = ("algebra", "op")

    def __init__(self, algebra: FiniteSemilattice, op: Sequence[int]):
        op = tuple(op)
        if not is_monotone_op(algebra, op):
            raise InvalidStructure("operator is not monotone", law="monotone")
        self.algebra = algebra
        self.op = op


class ModalSemilattice:
    """A semilattice with a meet- and top-preserving unary operator."""

    __slots__ = ("algebra", "op")

    def __init__(self, algebra: FiniteSemilattice, op: Sequence[int]):
        op = tuple(op)
        if not is_modal_op(algebra, op):
            raise InvalidStructure("operator is not modal", law="modal")
        self.algebra = algebra
        self.op = op


class SemilatticeHom:
    """A meet- and top-preserving map between semilattices."""

    __slots__ = ("source", "target", "mapping")

    def __init__(self, source, target, mapping: Sequence[int]):
        mapping = tuple(mapping)
        if len(mapping) != source.size:
            raise InvalidStructure("map length does not match the source", law="carrier")
        for a, v in enumerate(mapping):
            if not 0 <= v < target.size:
                raise InvalidStructure(
                    "map sends %d outside the target" % a, law="carrier", witness=(a,)
                )
        if mapping[source.top] != target.top:
            raise InvalidStructure("top is not preserved", law="top", witness=(source.top,))
        for a in range(source.size):
            for b in range(source.size):
                if mapping[source.meet[a][b]] != target.meet[mapping[a]][mapping[b]]:
                    raise InvalidStructure(
                        "meet is not preserved at (%d, %d)" % (a, b),
                        law="meet",
                        witness=(a, b),
                    )
        self.source = source
        self.target = target
        self.mapping = mapping

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    def __eq__(self, other):
        return (
            isinstance(other, SemilatticeHom)
            and self.source == other.source
            and self.target == other.target
            and self.mapping == other.mapping
        )

    def __hash__(self):
        return hash(("SemilatticeHom", self.mapping))


def identity_hom(algebra: FiniteSemilattice) -> SemilatticeHom:
    return SemilatticeHom(algebra, algebra, range(algebra.size))


def hom_compose(g: SemilatticeHom, h: SemilatticeHom) -> SemilatticeHom:
    """The composite ``g after h``."""
    if h.target != g.source:
        raise CarrierMismatch("homs do not compose")
    return SemilatticeHom(h.source, g.target, [g(h(a)) for a in range(h.source.size)])


def check_hom(
    h: SemilatticeHom,
    kind: str = "plain",
    source_ops: Sequence[Sequence[int]] = (),
    target_ops: Sequence[Sequence[int]] = (),
) -> bool:
    """Check that ``h`` is a homomorphism of the given kind.

    ``plain`` checks meet and top preservation; ``monotone`` and ``modal``
    additionally require commutation with one unary operator on each side;
    ``slata`` requires commutation with both operators of an adjoint pair,
    given in the order (left, right).
    """
    expected = {"plain": 0, "monotone": 1, "modal": 1, "slata": 2}
    if kind not in expected:
        raise InvalidStructure("unknown homomorphism kind %r" % kind)
    if len(source_ops) != expected[kind] or len(target_ops) != expected[kind]:
        raise CarrierMismatch(
            "kind %r needs %d operator(s) per side" % (kind, expected[kind])
        )
    src, tgt = h.source, h.target
    if h.mapping[src.top] != tgt.top:
        return False
    for a in range(src.size):
        for b in range(src.size):
            if h.mapping[src.meet[a][b]] != tgt.meet[h(a)][h(b)]:
                return False
    for m, n_op in zip(source_ops, target_ops):
        if len(m) != src.size or len(n_op) != tgt.size:
            raise CarrierMismatch("operator arrays do not match the carriers")
        if any(h(m[a]) != n_op[h(a)] for a in range(src.size)):
            return False
    return True


def validate_slata(
    algebra: FiniteSemilattice, left: Sequence[int], right: Sequence[int]
) -> ValidationReport:
    """Check that (left, right) is an adjoint pair on the derived order."""
    left, right = tuple(left), tuple(right)
    checks = []
    n = algebra.size
    sized = len(left) == n == len(right)
    inrange = sized and all(0 <= v < n for v in left + right)
    checks.append(
        LawCheck("carrier", inrange, None if inrange else {"reason": "bad operator arrays"})
    )
    if not inrange:
        return ValidationReport(tuple(checks))

    for name, op in (("monotone-left", left), ("monotone-right", right)):
        w = next(
            (
                (a, b)
                for a in range(n)
                for b in range(n)
                if algebra.leq(a, b) and not algebra.leq(op[a], op[b])
            ),
            None,
        )
        checks.append(LawCheck(name, w is None, None if w is None else {"witness": list(w)}))

    w = next(
        (
            (p, q)
            for p in range(n)
            for q in range(n)
            if algebra.leq(left[p], q) != algebra.leq(p, right[q])
        ),
        None,
    )
    checks.append(LawCheck("adjunction", w is None, None if w is None else {"witness": list(w)}))
    return ValidationReport(tuple(checks))


class Slata:
    """A semilattice carrying an adjoint pair ``left -| right``."""

    __slots__ = ("algebra", "left", "right")

    def __init__(self, algebra: FiniteSemilattice, left: Sequence[int], right: Sequence[int]):
        report = validate_slata(algebra, left, right)
        if not report.passed:
            fail = report.first_failure()
            raise InvalidStructure(
                "not an adjoint pair: %s fails (%r)" % (fail.law, fail.witness),
                law=fail.law,
                witness=fail.witness,
            )
        self.algebra = algebra
        self.left = tuple(left)
        self.right = tuple(right)

    @classmethod
    def identity(cls, algebra: FiniteSemilattice) -> "Slata":
        ident = tuple(range(algebra.size))
        return cls(algebra, ident, ident)

    def __eq__(self, other):
        return (
            isinstance(other, Slata)
            and self.algebra == other.algebra
            and self.left == other.left
            and self.right == other.right
        )

    def __hash__(self):
        return hash(("Slata", self.algebra, self.left, self.right))

    def __repr__(self):
        return "Slata(size=%d)" % self.algebra.size


def slata_hom_criterion(h: SemilatticeHom, source: Slata, target: Slata) -> bool:
    """Left-adjoint preservation via inverse images of principal upsets.

    Requires ``h`` to preserve meet, top and the right adjoints; under
    that assumption, ``h`` preserves the left adjoints exactly when the
    inverse image of each upset above ``h(a)`` under the target's right
    adjoint is contained in the upset above ``h(left(a))``. Both forms are
    computed and asserted equal on every call.
    """
    if h.source != source.algebra or h.target != target.algebra:
        raise CarrierMismatch("hom does not connect the two adjoint-pair carriers")
    for a in range(h.source.size):
        if h(source.right[a]) != target.right[h(a)]:
            raise InvalidStructure(
                "hom does not preserve the right adjoints",
                law="right-adjoint",
                witness=(a,),
            )
    tgt = target.algebra
    upward = True
    for a in range(h.source.size):
        fa = h(a)
        f_ia = h(source.left[a])
        for b in range(tgt.size):
            if tgt.leq(fa, target.right[b]) and not tgt.leq(f_ia, b):
                upward = False
                break
        if not upward:
            break
    direct = all(h(source.left[a]) == target.left[h(a)] for a in range(h.source.size))
    assert direct == upward
    return upward
