"""Finite spaces presented by a subbase of open point-sets.

A space is a point count together with a canonical subbase: bitmask
point-sets, sorted ascending, duplicates removed. The subbase must cover
the point set and contain the empty set. Derived data (subbasic closed
sets, closure system, saturated subbasics, specialization order, axiom
reports) is computed lazily and cached write-once.

Conventions: an intersection over an empty family is the whole point set;
the empty space (0 points, subbase {{}}) is legal.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .bitset import bit, bits, full_mask, is_subset, to_list
from .errors import InvalidStructure, UnverifiedSpace
from .order import FinitePoset
from .semilattice import FiniteSemilattice

DEFAULT_S4_LIMIT = 12

# Above this many subbase members the dually-directed enumeration is
# replaced by its provable collapse (every finite dually directed family
# has a least member, so the intersections are the members themselves).
_SATURATED_ENUMERATION_LIMIT = 12


@dataclass(frozen=True)
class AxiomCheck:
    passed: Optional[bool]
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        return {"passed": self.passed, "witness": self.witness}


@dataclass(frozen=True)
class SpaceReport:
    """Per-axiom status for S1..S4, with witnesses for failures.

    ``s4.passed`` is None when the size guard skipped the scan; a space
    counts as verified only when every axiom passed and none was skipped.
    """

    s1: AxiomCheck
    s2: AxiomCheck
    s3: AxiomCheck
    s4: AxiomCheck
    s4_skipped: bool
    s4_limit: int

    @property
    def is_s_space(self) -> bool:
        return (
            self.s1.passed is True
            and self.s2.passed is True
            and self.s3.passed is True
            and self.s4.passed is True
            and not self.s4_skipped
        )

    def to_dict(self) -> dict:
        return {
            "s1": self.s1.to_dict(),
            "s2": self.s2.to_dict(),
            "s3": self.s3.to_dict(),
            "s4": self.s4.to_dict(),
            "s4_skipped": self.s4_skipped,
            "s4_limit": self.s4_limit,
            "is_s_space": self.is_s_space,
            "notes": {"s2_compactness": "every subset of a finite space is compact"},
        }


class FiniteSpace:
    __slots__ = ("points", "subbase", "_cache")

    def __init__(self, points: int, subbase: Sequence[int]):
        if points < 0:
            raise InvalidStructure("negative point count", law="carrier")
        full = full_mask(points)
        canonical = tuple(sorted(set(int(u) for u in subbase)))
        for u in canonical:
            if u & ~full:
                raise InvalidStructure(
                    "subbase member references points outside the space",
                    law="carrier",
                    witness=(u,),
                )
        if 0 not in canonical:
            raise InvalidStructure(
                "subbase must contain the empty set", law="empty-member"
            )
        cover = 0
        for u in canonical:
            cover |= u
        if cover != full:
            raise InvalidStructure(
                "subbase does not cover the point set",
                law="cover",
                witness=tuple(to_list(full & ~cover)),
            )
        self.points = points
        self.subbase = canonical
        self._cache = {}

    @classmethod
    def from_sets(cls, points: int, sets) -> "FiniteSpace":
        masks = []
        for s in sets:
            m = 0
            for p in s:
                m |= bit(p)
            masks.append(m)
        return cls(points, masks)

    @property
    def full(self) -> int:
        return full_mask(self.points)

    def set_to_points(self, mask: int) -> list:
        return to_list(mask)

    # -- derived families ------------------------------------------------

    def s_family(self) -> Tuple[int, ...]:
        """Complements of the subbase members, canonically ordered."""
        if "s" not in self._cache:
            full = self.full
            self._cache["s"] = tuple(sorted({full & ~u for u in self.subbase}))
        return self._cache["s"]

    def s_index(self) -> dict:
        if "s_index" not in self._cache:
            self._cache["s_index"] = {u: i for i, u in enumerate(self.s_family())}
        return self._cache["s_index"]

    def closure(self, y: int) -> int:
        """Least intersection of subbasic closed sets covering ``y``."""
        cache = self._cache.setdefault("closure", {})
        if y not in cache:
            out = self.full
            for u in self.s_family():
                if is_subset(y, u):
                    out &= u
            cache[y] = out
        return cache[y]

    def closure_system(self) -> Tuple[int, ...]:
        """All intersections of subfamilies of the subbasic closed sets."""
        if "closure_system" not in self._cache:
            s = self.s_family()
            fam = {self.full}
            fam.update(s)
            frontier = list(fam)
            while frontier:
                a = frontier.pop()
                for u in s:
                    c = a & u
                    if c not in fam:
                        fam.add(c)
                        frontier.append(c)
            self._cache["closure_system"] = tuple(sorted(fam))
        return self._cache["closure_system"]

    def c_index(self) -> dict:
        if "c_index" not in self._cache:
            self._cache["c_index"] = {y: i for i, y in enumerate(self.closure_system())}
        return self._cache["c_index"]

    def saturated_subbasics(self) -> Tuple[int, ...]:
        """Intersections of non-empty dually directed subbase subfamilies.

        On a finite space this always collapses to the subbase itself,
        which is asserted whenever the family is small enough to enumerate.
        """
        if "saturated" not in self._cache:
            k = self.subbase
            if len(k) <= _SATURATED_ENUMERATION_LIMIT:
                out = set()
                for fmask in range(1, 1 << len(k)):
                    members = [k[i] for i in bits(fmask)]
                    directed = all(
                        any(is_subset(w, u & v) for w in members)
                        for u in members
                        for v in members
                    )
                    if directed:
                        inter = self.full
                        for m in members:
                            inter &= m
                        out.add(inter)
                assert out == set(k)
                self._cache["saturated"] = tuple(sorted(out))
            else:
                self._cache["saturated"] = tuple(sorted(set(k)))
        return self._cache["saturated"]

    def z_index(self) -> dict:
        if "z_index" not in self._cache:
            self._cache["z_index"] = {z: i for i, z in enumerate(self.saturated_subbasics())}
        return self._cache["z_index"]

    # -- specialization order ---------------------------------------------

    def _closure_rows(self) -> Tuple[int, ...]:
        if "cl_rows" not in self._cache:
            self._cache["cl_rows"] = tuple(
                self.closure(bit(x)) for x in range(self.points)
            )
        return self._cache["cl_rows"]

    def t0_witness(self) -> Optional[Tuple[int, int]]:
        rows = self._closure_rows()
        seen = {}
        for x, r in enumerate(rows):
            if r in seen:
                return (seen[r], x)
            seen[r] = x
        return None

    def specialization_dual(self) -> FinitePoset:
        """The poset whose order is the dual of the specialization order.

        Row ``x`` is the closure of ``x``, so the principal upset of a
        point is its point closure. Requires the space to distinguish
        points by their closures.
        """
        if "spec_dual" not in self._cache:
            w = self.t0_witness()
            if w is not None:
                raise InvalidStructure(
                    "points %d and %d share the same closure" % w,
                    law="T0",
                    witness=w,
                )
            self._cache["spec_dual"] = FinitePoset(self._closure_rows())
        return self._cache["spec_dual"]

    def down_set(self, x: int) -> int:
        """Points whose closure contains ``x``, as a bitmask.

        Always agrees with the intersection of the subbase members
        containing ``x`` and is a saturated subbasic set; both facts are
        asserted.
        """
        if not 0 <= x < self.points:
            raise IndexError("point %r out of range" % (x,))
        poset = self.specialization_dual()
        down = poset.down_mask(x)
        inter = self.full
        for u in self.subbase:
            if u >> x & 1:
                inter &= u
        assert down == inter
        assert down in set(self.saturated_subbasics())
        return down

    # -- families attached to a subbasic closed set ------------------------

    def _require_subbasic_closed(self, u: int) -> None:
        if u not in self.s_index():
            raise InvalidStructure(
                "set is not subbasic closed", law="not-subbasic-closed", witness=(u,)
            )

    def d_family(self, u: int) -> Tuple[int, ...]:
        """Members of the closure system contained in ``u``."""
        self._require_subbasic_closed(u)
        return tuple(y for y in self.closure_system() if is_subset(y, u))

    def l_family(self, u: int) -> Tuple[int, ...]:
        """Saturated subbasics meeting ``u``."""
        self._require_subbasic_closed(u)
        return tuple(z for z in self.saturated_subbasics() if z & u)

    def d_indices(self, u: int) -> frozenset:
        cache = self._cache.setdefault("d_idx", {})
        if u not in cache:
            self._require_subbasic_closed(u)
            cache[u] = frozenset(
                i for i, y in enumerate(self.closure_system()) if is_subset(y, u)
            )
        return cache[u]

    def l_indices(self, u: int) -> frozenset:
        cache = self._cache.setdefault("l_idx", {})
        if u not in cache:
            self._require_subbasic_closed(u)
            cache[u] = frozenset(
                i for i, z in enumerate(self.saturated_subbasics()) if z & u
            )
        return cache[u]

    # -- the semilattice of subbasic closed sets ---------------------------

    def semilattice(self):
        """The semilattice of subbasic closed sets under intersection.

        Returns (algebra, element sets); elements follow the canonical
        ordering of the closed sets. Needs the family to be closed under
        intersection, which axiom S2 guarantees.
        """
        if "semilattice" not in self._cache:
            s = self.s_family()
            index = self.s_index()
            try:
                meet = [[index[a & b] for b in s] for a in s]
            except KeyError:
                raise InvalidStructure(
                    "subbasic closed sets are not closed under intersection",
                    law="S2",
                )
            algebra = FiniteSemilattice(meet, index[self.full])
            self._cache["semilattice"] = (algebra, s)
        return self._cache["semilattice"]

    # -- axiom checking ----------------------------------------------------

    def axiom_report(self, s4_limit: int = DEFAULT_S4_LIMIT) -> SpaceReport:
        cache = self._cache.setdefault("reports", {})
        if s4_limit not in cache:
            cache[s4_limit] = _check_axioms(self, s4_limit)
        return cache[s4_limit]

    @property
    def is_verified(self) -> bool:
        return self.axiom_report().is_s_space

    def require_verified(self, s4_limit: int = DEFAULT_S4_LIMIT) -> None:
        report = self.axiom_report(s4_limit)
        if report.is_s_space:
            return
        if report.s4_skipped:
            raise UnverifiedSpace(
                "S4 scan skipped: %d subbasic closed sets exceed the limit %d"
                % (len(self.s_family()), s4_limit),
                skipped=True,
            )
        raise UnverifiedSpace("space fails the S-space axioms")

    def __eq__(self, other):
        return (
            isinstance(other, FiniteSpace)
            and self.points == other.points
            and self.subbase == other.subbase
        )

    def __hash__(self):
        return hash(("FiniteSpace", self.points, self.subbase))

    def __repr__(self):
        return "FiniteSpace(points=%d, subbase=%d sets)" % (
            self.points,
            len(self.subbase),
        )


def _check_s1(space: FiniteSpace) -> AxiomCheck:
    cover = 0
    for u in space.subbase:
        cover |= u
    if cover != space.full:
        return AxiomCheck(False, {"reason": "cover", "missing": to_list(space.full & ~cover)})
    w = space.t0_witness()
    if w is not None:
        return AxiomCheck(False, {"reason": "T0", "points": list(w)})
    return AxiomCheck(True)


def _check_s2(space: FiniteSpace) -> AxiomCheck:
    k = space.subbase
    kset = set(k)
    if 0 not in kset:
        return AxiomCheck(False, {"reason": "empty set missing"})
    for i, u in enumerate(k):
        for v in k[i:]:
            if u | v not in kset:
                return AxiomCheck(
                    False,
                    {"reason": "union", "members": [to_list(u), to_list(v)]},
                )
    return AxiomCheck(True)


def _check_s3(space: FiniteSpace) -> AxiomCheck:
    k = space.subbase
    for u in k:
        for v in k:
            inter = u & v
            for x in bits(inter):
                found = False
                for d in k:
                    if not d >> x & 1:
                        continue
                    for w in k:
                        if w >> x & 1:
                            continue
                        if is_subset(d, inter | w):
                            found = True
                            break
                    if found:
                        break
                if not found:
                    return AxiomCheck(
                        False,
                        {"point": x, "u": to_list(u), "v": to_list(v)},
                    )
    return AxiomCheck(True)


def _is_y_family(y: int, members, s_supersets) -> bool:
    """Whether the family satisfies the pairwise witness condition for y.

    ``s_supersets`` lists the subbasic closed sets containing y. The two
    clauses for a pair reduce to one inclusion on the union.
    """
    k = len(members)
    for i in range(k):
        for j in range(i, k):
            u = members[i] | members[j]
            ok = False
            for h in s_supersets:
                uh = u & h
                if any(is_subset(uh, c) for c in members):
                    ok = True
                    break
            if not ok:
                return False
    return True


def _check_s4(space: FiniteSpace, s4_limit: int):
    s = space.s_family()
    if len(s) > s4_limit:
        return AxiomCheck(None, {"reason": "skipped by size guard"}), True
    m = len(s)
    for y in space.closure_system():
        supersets = [h for h in s if is_subset(y, h)]
        # Empty families are treated as vacuous for this axiom.
        for fmask in range(1, 1 << m):
            inter = y
            antecedent = True
            mm = fmask
            while mm:
                i = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                a = s[i]
                if is_subset(y, a):
                    antecedent = False
                    break
                inter &= ~a
            if not antecedent or inter:
                continue
            members = [s[i] for i in bits(fmask)]
            if _is_y_family(y, members, supersets):
                return (
                    AxiomCheck(
                        False,
                        {"y": to_list(y), "family": [to_list(a) for a in members]},
                    ),
                    False,
                )
    return AxiomCheck(True), False


def _check_axioms(space: FiniteSpace, s4_limit: int) -> SpaceReport:
    s1 = _check_s1(space)
    s2 = _check_s2(space)
    s3 = _check_s3(space)
    s4, skipped = _check_s4(space, s4_limit)
    return SpaceReport(s1, s2, s3, s4, skipped, s4_limit)


# -- module-level operation names ------------------------------------------


def subbasic_closed(space: FiniteSpace) -> Tuple[int, ...]:
    return space.s_family()


def closure(space: FiniteSpace, y: int) -> int:
    if y & ~space.full:
        raise InvalidStructure("set references points outside the space", law="carrier")
    return space.closure(y)


def dual_specialization(space: FiniteSpace) -> FinitePoset:
    return space.specialization_dual()


def closure_system(space: FiniteSpace) -> Tuple[int, ...]:
    return space.closure_system()


def saturated_subbasics(space: FiniteSpace) -> Tuple[int, ...]:
    return space.saturated_subbasics()


def check_s_axioms(space: FiniteSpace, s4_limit: int = DEFAULT_S4_LIMIT) -> SpaceReport:
    return space.axiom_report(s4_limit)


def down_set(space: FiniteSpace, x: int) -> int:
    return space.down_set(x)


def d_family(space: FiniteSpace, u: int) -> Tuple[int, ...]:
    return space.d_family(u)


def l_family(space: FiniteSpace, u: int) -> Tuple[int, ...]:
    return space.l_family(u)
