"""Seeded random structures for the workbench and its test batteries.

Semilattices are built as intersection-closed set families, so they are
valid by construction. Operators and homomorphisms mix rejection sampling
with closed-form families that always exist (constant-style maps, filter
characters, inverse images of monotone point maps on upset algebras).
All sampling goes through a caller-provided ``random.Random``.
"""

import random
from typing import List, Optional, Tuple

from .bitset import bit, bits, full_mask, is_subset
from .errors import BudgetExhausted
from .order import FinitePoset, MonotoneMap, find_left_adjoint
from .semilattice import (
    FiniteSemilattice,
    SemilatticeHom,
    Slata,
    is_modal_op,
    is_monotone_op,
)


def _close_under_intersection(family: set) -> set:
    out = set(family)
    frontier = list(out)
    while frontier:
        a = frontier.pop()
        for b in list(out):
            c = a & b
            if c not in out:
                out.add(c)
                frontier.append(c)
    return out


def random_semilattice(rng: random.Random, max_size: int = 7) -> FiniteSemilattice:
    """A random intersection-closed set family, presented canonically."""
    target = rng.randint(1, max_size)
    ground = rng.randint(0, 5)
    full = full_mask(ground)
    family = {full}
    for _ in range(40):
        if len(family) >= target:
            break
        cand = rng.randint(0, full)
        grown = _close_under_intersection(family | {cand})
        if len(grown) <= max_size:
            family = grown
    return FiniteSemilattice.from_intersection_family(family)


def random_monotone_op(rng: random.Random, algebra: FiniteSemilattice, tries: int = 120):
    """A random order-preserving unary operator; always succeeds."""
    n = algebra.size
    for _ in range(tries):
        op = tuple(rng.randrange(n) for _ in range(n))
        if is_monotone_op(algebra, op):
            return op
    c = rng.randrange(n)
    if rng.random() < 0.5:
        return tuple(c for _ in range(n))
    return tuple(algebra.meet[a][c] for a in range(n))


def random_modal_op(rng: random.Random, algebra: FiniteSemilattice, tries: int = 60):
    """A random meet- and top-preserving operator; always succeeds.

    Filter characters (top on a filter, a fixed value elsewhere) are modal
    for every filter, so they serve as the fallback family.
    """
    n = algebra.size
    for _ in range(tries):
        op = tuple(rng.randrange(n) for _ in range(n))
        if is_modal_op(algebra, op):
            return op
    f = rng.choice(algebra.filters())
    b0 = rng.randrange(n)
    op = tuple(algebra.top if f >> a & 1 else b0 for a in range(n))
    if is_modal_op(algebra, op):
        return op
    return tuple(range(n))


def random_monotone_not_modal(
    rng: random.Random, algebra: FiniteSemilattice, tries: int = 200
):
    """A monotone operator violating a modal law; None on one-element
    carriers, where every operator is modal."""
    if algebra.size < 2:
        return None
    for _ in range(tries):
        op = random_monotone_op(rng, algebra)
        if not is_modal_op(algebra, op):
            return op
    bottom = algebra.bottom()
    if bottom != algebra.top:
        return tuple(bottom for _ in range(algebra.size))
    return None


def random_hom(
    rng: random.Random, source: FiniteSemilattice, target: FiniteSemilattice, tries: int = 60
) -> SemilatticeHom:
    """A random meet- and top-preserving map; always succeeds.

    Falls back to a filter character: top on a random filter of the
    source, a fixed target value elsewhere.
    """
    for _ in range(tries):
        mapping = [rng.randrange(target.size) for _ in range(source.size)]
        mapping[source.top] = target.top
        try:
            return SemilatticeHom(source, target, mapping)
        except Exception:
            continue
    f = rng.choice(source.filters())
    b0 = rng.randrange(target.size)
    mapping = [target.top if f >> a & 1 else b0 for a in range(source.size)]
    return SemilatticeHom(source, target, mapping)


def random_poset(rng: random.Random, size: int) -> FinitePoset:
    rows = [bit(x) for x in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            if rng.random() < 0.45:
                rows[i] |= bit(j)
    # transitive closure over the index order, which is a linear extension
    for i in range(size - 1, -1, -1):
        acc = rows[i]
        for j in bits(rows[i]):
            acc |= rows[j]
        rows[i] = acc
    return FinitePoset(rows)


def _monotone_point_map(rng: random.Random, poset: FinitePoset, tries: int = 60):
    n = poset.size
    for _ in range(tries):
        mapping = [rng.randrange(n) for _ in range(n)]
        ok = all(
            poset.leq(mapping[x], mapping[y])
            for x in range(n)
            for y in bits(poset.rows[x])
        )
        if ok:
            return mapping
    return list(range(n))


def random_slata(rng: random.Random, max_size: int = 6, tries: int = 25) -> Slata:
    """A random semilattice with an adjoint pair.

    Mixes two sources: meet-preserving operators whose inverse images of
    principal upsets are all principal (found by rejection), and upset
    algebras of small posets where a monotone point map induces the pair
    by inverse image and up-closed direct image.
    """
    if rng.random() < 0.5:
        for _ in range(tries):
            algebra = random_semilattice(rng, max_size)
            op = random_modal_op(rng, algebra)
            poset = algebra.poset()
            left = find_left_adjoint(MonotoneMap(poset, poset, op))
            if left is not None:
                return Slata(algebra, left.mapping, op)
    for _ in range(200):
        n = rng.randint(1, 4)
        poset = random_poset(rng, n)
        ups = poset.upsets()
        if len(ups) <= max_size:
            break
    else:
        poset = FinitePoset.chain(max(1, max_size - 1))
        ups = poset.upsets()
    g = _monotone_point_map(rng, poset)
    algebra = FiniteSemilattice.from_intersection_family(ups)
    fam = tuple(sorted(set(ups)))
    index = {m: i for i, m in enumerate(fam)}
    right = []
    left = []
    for u in fam:
        pre = 0
        for p in range(poset.size):
            if u >> g[p] & 1:
                pre |= bit(p)
        right.append(index[pre])
        img = 0
        for p in bits(u):
            img |= poset.rows[g[p]]
        left.append(index[img])
    return Slata(algebra, left, right)


def relabeled_slata(rng: random.Random, slata: Slata) -> Tuple[Slata, SemilatticeHom]:
    """An isomorphic copy under a random carrier permutation, with the
    permutation as the connecting isomorphism."""
    n = slata.algebra.size
    perm = list(range(n))
    rng.shuffle(perm)
    meet = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            meet[perm[a]][perm[b]] = perm[slata.algebra.meet[a][b]]
    algebra = FiniteSemilattice(meet, perm[slata.algebra.top])
    left = [0] * n
    right = [0] * n
    for a in range(n):
        left[perm[a]] = perm[slata.left[a]]
        right[perm[a]] = perm[slata.right[a]]
    other = Slata(algebra, left, right)
    iso = SemilatticeHom(slata.algebra, algebra, perm)
    return other, iso


def random_hom_chain(
    rng: random.Random, max_size: int = 6, length: int = 3
) -> List[SemilatticeHom]:
    """Composable homomorphisms A0 -> A1 -> ... of the given length."""
    algebras = [random_semilattice(rng, max_size) for _ in range(length + 1)]
    return [
        random_hom(rng, algebras[i], algebras[i + 1]) for i in range(length)
    ]


def sample_or_fail(sampler, budget: int, what: str):
    """Call ``sampler`` until it returns non-None, or raise."""
    for _ in range(budget):
        value = sampler()
        if value is not None:
            return value
    raise BudgetExhausted("sampling budget exhausted while generating %s" % what)
