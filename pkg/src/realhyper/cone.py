"""Bitmask encoding of subsets of a cyclic group P = <a> of order N.

A subset {a^i : i in I} is stored as the integer sum(2**i for i in I).
Multiplying a subset by a^k is a rotation of the low N bits.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator

MAX_ORDER = 32


def check_order(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"cone order must be an int, got {type(n).__name__}")
    if not 1 <= n <= MAX_ORDER:
        raise ValueError(f"cone order must lie in [1, {MAX_ORDER}], got {n}")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def encode(n: int, indices: Iterable[int]) -> int:
    check_order(n)
    code = 0
    for i in indices:
        if not 0 <= i < n:
            raise ValueError(f"exponent {i} outside [0, {n})")
        code |= 1 << i
    return code


def decode(n: int, code: int) -> frozenset[int]:
    check_order(n)
    if not 0 <= code <= full_mask(n):
        raise ValueError(f"code {code} is not an {n}-bit mask")
    return frozenset(iter_bits(code))


def iter_bits(code: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``code`` in increasing order."""
    while code:
        low = code & -code
        yield low.bit_length() - 1
        code ^= low


def popcount(code: int) -> int:
    return bin(code).count("1")


def shift(n: int, k: int, code: int) -> int:
    """Multiply the subset ``code`` by a^k (rotate left by k within n bits)."""
    k %= n
    if k == 0:
        return code
    return ((code << k) | (code >> (n - k))) & ((1 << n) - 1)


def scale(n: int, u: int, code: int) -> int:
    """Image of ``code`` under the endomorphism a^m -> a^(m*u mod n)."""
    out = 0
    for m in iter_bits(code):
        out |= 1 << (m * u % n)
    return out


def fmt_element(k: int) -> str:
    if k == 0:
        return "1"
    if k == 1:
        return "a"
    return f"a^{k}"


def fmt_subset(n: int, code: int) -> str:
    return "{" + ",".join(fmt_element(i) for i in sorted(decode(n, code))) + "}"
