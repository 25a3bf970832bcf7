"""Multirelations, sigma-relations, and the conversions between the
binary-relational and multirelational presentations.

A multirelation relates points to saturated subbasic sets; a
sigma-relation relates points to members of the closure system. Both
store fibers as index sets into the canonical enumeration held by the
space, so equality is a plain fiber comparison.
"""

from typing import Tuple

from .bitset import bit, bits, is_subset, to_list
from .errors import CarrierMismatch, CertificationError, InvalidStructure
from .relations import (
    BinaryRelation,
    box,
    is_meet_relation,
    require_a_relation,
    require_meet,
)
from .reports import LawCheck, ValidationReport
from .sspace import FiniteSpace


class Multirelation:
    """Per point, a set of saturated subbasic sets (by canonical index)."""

    __slots__ = ("space", "fibers")

    def __init__(self, space: FiniteSpace, fibers):
        fibers = tuple(frozenset(f) for f in fibers)
        if len(fibers) != space.points:
            raise InvalidStructure("fiber count does not match the space", law="carrier")
        zn = len(space.saturated_subbasics())
        for x, f in enumerate(fibers):
            for i in f:
                if not 0 <= i < zn:
                    raise InvalidStructure(
                        "fiber %d references an unknown saturated set" % x,
                        law="carrier",
                        witness=(x, i),
                    )
        self.space = space
        self.fibers = fibers

    @classmethod
    def from_zsets(cls, space: FiniteSpace, fiber_sets) -> "Multirelation":
        """Build from per-point iterables of saturated-set bitmasks."""
        zidx = space.z_index()
        fibers = []
        for x, f in enumerate(fiber_sets):
            idxs = set()
            for z in f:
                if z not in zidx:
                    raise InvalidStructure(
                        "fiber %d lists a set that is not saturated subbasic" % x,
                        law="unknown-set",
                        witness=(x, z),
                    )
                idxs.add(zidx[z])
            fibers.append(idxs)
        return cls(space, fibers)

    def fiber(self, x: int) -> frozenset:
        return self.fibers[x]

    def fiber_sets(self, x: int):
        zs = self.space.saturated_subbasics()
        return tuple(sorted(zs[i] for i in self.fibers[x]))

    def __eq__(self, other):
        return (
            isinstance(other, Multirelation)
            and self.space == other.space
            and self.fibers == other.fibers
        )

    def __hash__(self):
        return hash(("Multirelation", self.space, self.fibers))

    def __repr__(self):
        return "Multirelation(points=%d)" % self.space.points


class SigmaRelation:
    """Per point, a set of closure-system members (by canonical index)."""

    __slots__ = ("space", "fibers")

    def __init__(self, space: FiniteSpace, fibers):
        fibers = tuple(frozenset(f) for f in fibers)
        if len(fibers) != space.points:
            raise InvalidStructure("fiber count does not match the space", law="carrier")
        cn = len(space.closure_system())
        for x, f in enumerate(fibers):
            for i in f:
                if not 0 <= i < cn:
                    raise InvalidStructure(
                        "fiber %d references an unknown closed set" % x,
                        law="carrier",
                        witness=(x, i),
                    )
        self.space = space
        self.fibers = fibers

    @classmethod
    def from_csets(cls, space: FiniteSpace, fiber_sets) -> "SigmaRelation":
        cidx = space.c_index()
        fibers = []
        for x, f in enumerate(fiber_sets):
            idxs = set()
            for y in f:
                if y not in cidx:
                    raise InvalidStructure(
                        "fiber %d lists a set outside the closure system" % x,
                        law="unknown-set",
                        witness=(x, y),
                    )
                idxs.add(cidx[y])
            fibers.append(idxs)
        return cls(space, fibers)

    def fiber(self, x: int) -> frozenset:
        return self.fibers[x]

    def fiber_sets(self, x: int):
        cs = self.space.closure_system()
        return tuple(sorted(cs[i] for i in self.fibers[x]))

    def __eq__(self, other):
        return (
            isinstance(other, SigmaRelation)
            and self.space == other.space
            and self.fibers == other.fibers
        )

    def __hash__(self):
        return hash(("SigmaRelation", self.space, self.fibers))


# -- multirelation operators -------------------------------------------------


def m_of_multirel(r: Multirelation, u: int) -> int:
    """Points whose fiber lies inside the family of saturated sets
    meeting ``u``."""
    li = r.space.l_indices(u)
    out = 0
    for x in range(r.space.points):
        if r.fibers[x] <= li:
            out |= bit(x)
    return out


def check_ms_space(r: Multirelation) -> ValidationReport:
    """The two multirelation axioms: boxes land in the closed sets, and
    every fiber is the intersection of the families it certifies."""
    space = r.space
    s = space.s_family()
    s_set = set(s)
    checks = []

    w = None
    for u in s:
        if m_of_multirel(r, u) not in s_set:
            w = {"u": to_list(u)}
            break
    checks.append(LawCheck("m1", w is None, w))

    w = None
    universe = frozenset(range(len(space.saturated_subbasics())))
    for x in range(space.points):
        inter = universe
        for u in s:
            if m_of_multirel(r, u) >> x & 1:
                inter &= space.l_indices(u)
        if inter != r.fibers[x]:
            w = {"point": x}
            break
    checks.append(LawCheck("m2", w is None, w))
    return ValidationReport(tuple(checks))


def is_monotone_meet_relation(
    t: BinaryRelation, r1: Multirelation, r2: Multirelation
) -> bool:
    """Whether the box of ``t`` commutes with the two induced operators."""
    require_meet(t)
    if r1.space != t.source or r2.space != t.target:
        raise CarrierMismatch("multirelations do not live on the endpoints of t")
    for r in (r1, r2):
        if not check_ms_space(r).passed:
            raise CertificationError("multirelation fails the mS axioms")
    for u in t.target.s_family():
        if box(t, m_of_multirel(r2, u)) != m_of_multirel(r1, box(t, u)):
            return False
    return True


def is_normal(r: Multirelation) -> ValidationReport:
    """Normality: fibers are witnessed by point down-sets and exclude the
    empty set. Meaningful on multirelations passing the mS axioms."""
    space = r.space
    zidx = space.z_index()
    zs = space.saturated_subbasics()
    down_index = [zidx[space.down_set(x)] for x in range(space.points)]
    checks = []

    w = None
    for x in range(space.points):
        for zi in r.fibers[x]:
            if not any(down_index[y] in r.fibers[x] for y in bits(zs[zi])):
                w = {"point": x, "z": to_list(zs[zi])}
                break
        if w:
            break
    checks.append(LawCheck("N1", w is None, w))

    w = None
    if 0 in zidx:
        empty = zidx[0]
        for x in range(space.points):
            if empty in r.fibers[x]:
                w = {"point": x}
                break
    checks.append(LawCheck("N2", w is None, w))
    return ValidationReport(tuple(checks))


def check_slata_space(i_rel: Multirelation, e_rel: Multirelation) -> ValidationReport:
    """The three axioms for a space carrying an adjoint pair of
    multirelations."""
    if i_rel.space != e_rel.space:
        raise CarrierMismatch("the two multirelations live on different spaces")
    space = i_rel.space
    zs = space.saturated_subbasics()
    checks = []

    ms_i = check_ms_space(i_rel)
    ms_e = check_ms_space(e_rel)
    checks.append(
        LawCheck(
            "A1",
            ms_i.passed and ms_e.passed,
            None
            if ms_i.passed and ms_e.passed
            else {"left": ms_i.to_dict(), "right": ms_e.to_dict()},
        )
    )

    w = None
    for u in space.s_family():
        lu = space.l_indices(u)
        for x in bits(u):
            for zi in e_rel.fibers[x]:
                if not any(i_rel.fibers[wp] <= lu for wp in bits(zs[zi])):
                    w = {"u": to_list(u), "point": x, "z": to_list(zs[zi])}
                    break
            if w:
                break
        if w:
            break
    checks.append(LawCheck("A2", w is None, w))

    w = None
    for u in space.s_family():
        lu = space.l_indices(u)
        for x in range(space.points):
            if all(
                any(e_rel.fibers[y] <= lu for y in bits(zs[zi]))
                for zi in i_rel.fibers[x]
            ):
                if not u >> x & 1:
                    w = {"u": to_list(u), "point": x}
                    break
        if w:
            break
    checks.append(LawCheck("A3", w is None, w))
    return ValidationReport(tuple(checks))


class SlataSpace:
    """A verified space with a pair of multirelations passing the axioms."""

    __slots__ = ("space", "i_rel", "e_rel", "report")

    def __init__(self, space: FiniteSpace, i_rel: Multirelation, e_rel: Multirelation):
        if i_rel.space != space or e_rel.space != space:
            raise CarrierMismatch("multirelations do not live on the space")
        space.require_verified()
        report = check_slata_space(i_rel, e_rel)
        if not report.passed:
            fail = report.first_failure()
            raise InvalidStructure(
                "not a SLata-space: %s fails (%r)" % (fail.law, fail.witness),
                law=fail.law,
                witness=fail.witness,
            )
        self.space = space
        self.i_rel = i_rel
        self.e_rel = e_rel
        self.report = report

    def __eq__(self, other):
        return (
            isinstance(other, SlataSpace)
            and self.space == other.space
            and self.i_rel == other.i_rel
            and self.e_rel == other.e_rel
        )

    def __hash__(self):
        return hash(("SlataSpace", self.space, self.i_rel, self.e_rel))

    def __repr__(self):
        return "SlataSpace(points=%d)" % self.space.points


# -- sigma-relation operators -------------------------------------------------


def m_of_sigma(g: SigmaRelation, u: int) -> int:
    """Points with some fiber member contained in ``u``."""
    di = g.space.d_indices(u)
    out = 0
    for x in range(g.space.points):
        if g.fibers[x] & di:
            out |= bit(x)
    return out


def check_sigma_space(g: SigmaRelation) -> ValidationReport:
    space = g.space
    s = space.s_family()
    s_set = set(s)
    checks = []

    w = None
    for u in s:
        if m_of_sigma(g, u) not in s_set:
            w = {"u": to_list(u)}
            break
    checks.append(LawCheck("sigma1", w is None, w))

    w = None
    universe = frozenset(range(len(space.closure_system())))
    for x in range(space.points):
        inter = universe
        for u in s:
            if not m_of_sigma(g, u) >> x & 1:
                inter &= universe - space.d_indices(u)
        if inter != g.fibers[x]:
            w = {"point": x}
            break
    checks.append(LawCheck("sigma2", w is None, w))
    return ValidationReport(tuple(checks))


def psi(space: FiniteSpace, closed_family) -> Tuple[int, ...]:
    """Saturated subbasic sets meeting every member of the family."""
    cset = set(space.closure_system())
    fam = list(closed_family)
    for y in fam:
        if y not in cset:
            raise InvalidStructure(
                "family member is outside the closure system",
                law="unknown-set",
                witness=(y,),
            )
    return tuple(z for z in space.saturated_subbasics() if all(z & y for y in fam))


def _psi_indices(space: FiniteSpace, c_indices) -> frozenset:
    cs = space.closure_system()
    fam = [cs[i] for i in c_indices]
    return frozenset(
        i
        for i, z in enumerate(space.saturated_subbasics())
        if all(z & y for y in fam)
    )


# -- conversions ---------------------------------------------------------------


def multirel_from_sigma(g: SigmaRelation) -> Multirelation:
    """Collapse a sigma-relation to the multirelation of saturated sets
    meeting every fiber member. The two induced operators are asserted to
    agree on every subbasic closed set."""
    report = check_sigma_space(g)
    if not report.passed:
        fail = report.first_failure()
        raise CertificationError(
            "sigma-relation fails %s (%r)" % (fail.law, fail.witness)
        )
    space = g.space
    r = Multirelation(space, [_psi_indices(space, g.fibers[x]) for x in range(space.points)])
    assert all(m_of_sigma(g, u) == m_of_multirel(r, u) for u in space.s_family())
    return r


def multirel_from_meet(t: BinaryRelation) -> Multirelation:
    """The multirelation relating a point to every saturated set meeting
    its fiber."""
    if t.source != t.target:
        raise CarrierMismatch("conversion needs an endo-relation")
    require_meet(t)
    space = t.source
    zs = space.saturated_subbasics()
    fibers = []
    for x in range(space.points):
        row = t.rows[x]
        fibers.append({i for i, z in enumerate(zs) if z & row})
    return Multirelation(space, fibers)


def meet_from_normal(r: Multirelation) -> BinaryRelation:
    """The binary relation relating x to y when the down-set of y lies in
    the fiber of x. Requires the multirelation axioms and normality."""
    ms = check_ms_space(r)
    if not ms.passed:
        fail = ms.first_failure()
        raise CertificationError(
            "multirelation fails %s (%r)" % (fail.law, fail.witness)
        )
    normal = is_normal(r)
    if not normal.passed:
        fail = normal.first_failure()
        raise CertificationError(
            "multirelation is not normal: %s fails (%r)" % (fail.law, fail.witness)
        )
    space = r.space
    zidx = space.z_index()
    down_index = [zidx[space.down_set(y)] for y in range(space.points)]
    rows = []
    for x in range(space.points):
        row = 0
        for y in range(space.points):
            if down_index[y] in r.fibers[x]:
                row |= bit(y)
        rows.append(row)
    t = BinaryRelation(space, space, rows)
    require_meet(t)
    return t


def sigma_from_meet(t: BinaryRelation) -> SigmaRelation:
    """The sigma-relation relating x to every closed set that forces x
    into each subbasic closed set whose box covers it."""
    if t.source != t.target:
        raise CarrierMismatch("conversion needs an endo-relation")
    require_a_relation(t)
    space = t.source
    s = space.s_family()
    boxes = [(u, box(t, u)) for u in s]
    fibers = []
    for x in range(space.points):
        fiber = set()
        for ci, y in enumerate(space.closure_system()):
            if all(u >> x & 1 for u, bx in boxes if is_subset(y, bx)):
                fiber.add(ci)
        fibers.append(fiber)
    return SigmaRelation(space, fibers)
