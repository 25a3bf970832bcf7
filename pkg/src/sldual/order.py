"""Finite posets, monotone maps, and adjunctions between them.

Elements are integers ``0..size-1``. The order is stored row-wise as
bitmasks: row ``x`` holds the principal upset of ``x``, so bit ``y`` of
``rows[x]`` means ``x <= y``.
"""

from typing import Optional, Sequence

from .bitset import bit, bits, full_mask, is_subset
from .errors import CarrierMismatch, InvalidStructure


class FinitePoset:
    """A finite partial order, validated eagerly at construction."""

    __slots__ = ("size", "rows")

    def __init__(self, rows: Sequence[int]):
        rows = tuple(rows)
        n = len(rows)
        full = full_mask(n)
        for x, row in enumerate(rows):
            if row & ~full:
                raise InvalidStructure(
                    "row %d references elements outside 0..%d" % (x, n - 1),
                    law="carrier",
                    witness=(x,),
                )
        for x in range(n):
            if not rows[x] >> x & 1:
                raise InvalidStructure(
                    "reflexivity fails at %d" % x, law="reflexive", witness=(x,)
                )
        for x in range(n):
            for y in bits(rows[x]):
                if y == x:
                    continue
                if rows[y] >> x & 1:
                    raise InvalidStructure(
                        "antisymmetry fails at (%d, %d)" % (x, y),
                        law="antisymmetric",
                        witness=(x, y),
                    )
                extra = rows[y] & ~rows[x]
                if extra:
                    z = next(bits(extra))
                    raise InvalidStructure(
                        "transitivity fails at (%d, %d, %d)" % (x, y, z),
                        law="transitive",
                        witness=(x, y, z),
                    )
        self.size = n
        self.rows = rows

    @classmethod
    def from_leq(cls, leq: Sequence[Sequence[bool]]) -> "FinitePoset":
        rows = []
        for r in leq:
            m = 0
            for y, v in enumerate(r):
                if v:
                    m |= bit(y)
            rows.append(m)
        return cls(rows)

    @classmethod
    def chain(cls, n: int) -> "FinitePoset":
        return cls([full_mask(n) & ~full_mask(x) for x in range(n)])

    @classmethod
    def antichain(cls, n: int) -> "FinitePoset":
        return cls([bit(x) for x in range(n)])

    @property
    def full(self) -> int:
        return full_mask(self.size)

    def leq(self, x: int, y: int) -> bool:
        return bool(self.rows[x] >> y & 1)

    def down_mask(self, x: int) -> int:
        m = 0
        for y in range(self.size):
            if self.rows[y] >> x & 1:
                m |= bit(y)
        return m

    def is_upset(self, subset: int) -> bool:
        return all(is_subset(self.rows[x], subset) for x in bits(subset))

    def is_downset(self, subset: int) -> bool:
        return all(is_subset(self.down_mask(x), subset) for x in bits(subset))

    def upsets(self):
        """All upsets, as a sorted tuple of masks."""
        out = [m for m in range(self.full + 1) if self.is_upset(m)]
        return tuple(sorted(out))

    def __eq__(self, other):
        return (
            isinstance(other, FinitePoset)
            and self.size == other.size
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash(("FinitePoset", self.rows))

    def __repr__(self):
        return "FinitePoset(size=%d)" % self.size


def principal_upset(poset: FinitePoset, x: int) -> int:
    """The set of elements above ``x``, as a bitmask."""
    if not 0 <= x < poset.size:
        raise IndexError("element %r out of range 0..%d" % (x, poset.size - 1))
    return poset.rows[x]


def is_dually_directed(poset: FinitePoset, subset) -> bool:
    """Whether every pair in ``subset`` has a lower bound inside ``subset``.

    ``subset`` may be a bitmask or an iterable of elements; it must be
    non-empty.
    """
    mask = subset if isinstance(subset, int) else sum(bit(x) for x in set(subset))
    if mask == 0:
        raise InvalidStructure("dual directedness is defined for non-empty subsets only")
    if mask & ~poset.full:
        raise IndexError("subset references elements outside the poset")
    members = list(bits(mask))
    for i, x in enumerate(members):
        for y in members[i:]:
            if not any(poset.leq(z, x) and poset.leq(z, y) for z in members):
                return False
    return True


class MonotoneMap:
    """An order-preserving map between two finite posets."""

    __slots__ = ("source", "target", "mapping")

    def __init__(self, source: FinitePoset, target: FinitePoset, mapping: Sequence[int]):
        mapping = tuple(mapping)
        if len(mapping) != source.size:
            raise InvalidStructure(
                "map has %d entries for a %d-element source" % (len(mapping), source.size),
                law="carrier",
            )
        for x, v in enumerate(mapping):
            if not 0 <= v < target.size:
                raise InvalidStructure(
                    "map sends %d outside the target" % x, law="carrier", witness=(x,)
                )
        for x in range(source.size):
            for y in bits(source.rows[x]):
                if not target.leq(mapping[x], mapping[y]):
                    raise InvalidStructure(
                        "order is not preserved at (%d, %d)" % (x, y),
                        law="monotone",
                        witness=(x, y),
                    )
        self.source = source
        self.target = target
        self.mapping = mapping

    @classmethod
    def identity(cls, poset: FinitePoset) -> "MonotoneMap":
        return cls(poset, poset, range(poset.size))

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def __eq__(self, other):
        return (
            isinstance(other, MonotoneMap)
            and self.source == other.source
            and self.target == other.target
            and self.mapping == other.mapping
        )

    def __hash__(self):
        return hash(("MonotoneMap", self.mapping))

    def __repr__(self):
        return "MonotoneMap(%r)" % (self.mapping,)


def adjunction_witness(f: MonotoneMap, g: MonotoneMap):
    """First pair (p, q) violating ``f(p) <= q  iff  p <= g(q)``, or None."""
    if f.source != g.target or f.target != g.source:
        raise CarrierMismatch("adjunction requires f: Q -> P and g: P -> Q on the same posets")
    for p in range(f.source.size):
        for q in range(f.target.size):
            if f.target.leq(f(p), q) != f.source.leq(p, g(q)):
                return (p, q)
    return None


def check_adjunction(f: MonotoneMap, g: MonotoneMap) -> bool:
    """Whether ``f(p) <= q  iff  p <= g(q)`` holds for every pair."""
    return adjunction_witness(f, g) is None


def find_left_adjoint(d: MonotoneMap) -> Optional[MonotoneMap]:
    """The left adjoint of ``d``, if one exists.

    A left adjoint exists exactly when every inverse image of a principal
    upset is itself a principal upset; its value at ``q`` is the generator
    of that upset. An empty inverse image has no generator, so it counts as
    not principal.
    """
    src, tgt = d.source, d.target
    mapping = []
    for q in range(tgt.size):
        pre = 0
        for p in range(src.size):
            if tgt.leq(q, d(p)):
                pre |= bit(p)
        if pre == 0:
            return None
        gen = None
        for p in bits(pre):
            if is_subset(pre, src.rows[p]):
                gen = p
                break
        if gen is None:
            return None
        mapping.append(gen)
    left = MonotoneMap(tgt, src, mapping)
    assert check_adjunction(left, d)
    for q in range(tgt.size):
        pre = 0
        for p in range(src.size):
            if tgt.leq(q, d(p)):
                pre |= bit(p)
        assert pre == src.rows[mapping[q]]
    return left
