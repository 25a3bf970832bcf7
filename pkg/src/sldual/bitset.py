"""Bitmask helpers for sets of small integer indices.

Point-sets and element-sets throughout the package are plain ints used as
bitmasks; families of sets are sorted tuples of masks. Keeping everything
on ints makes equality, hashing and JSON canonicalisation trivial.
"""


def full_mask(n: int) -> int:
    return (1 << n) - 1


def bit(i: int) -> int:
    return 1 << i


def bits(mask: int):
    """Yield the indices set in ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def to_list(mask: int) -> list:
    return list(bits(mask))
