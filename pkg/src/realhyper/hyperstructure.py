"""Candidate hyperstructures generated by a tuple of subset codes.

A generator tuple ``(s_0, ..., s_K)`` with ``K = N // 2`` fixes the sets
``1 + a^l`` for ``l <= K``; the remaining ``1 + a^j`` are forced by
``1 + a^j = a^j (1 + a^(N-j))``.  All sets live in the positive cone and are
handled as bitmasks (see :mod:`realhyper.cone`).
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from .cone import check_order, fmt_element, fmt_subset, full_mask, iter_bits, shift

GeneratorTuple = tuple[int, ...]


def half(n: int) -> int:
    return n // 2


def validate_tuple(n: int, t: Sequence[int]) -> GeneratorTuple:
    """Return ``t`` as a tuple after checking arity and entry range."""
    check_order(n)
    t = tuple(int(x) for x in t)
    if len(t) != half(n) + 1:
        raise ValueError(
            f"order {n} needs a tuple of length {half(n) + 1}, got {len(t)}")
    top = full_mask(n)
    for i, s in enumerate(t):
        if not 1 <= s <= top:
            raise ValueError(f"entry s_{i}={s} outside [1, {top}]")
    return t


def even_cond(n: int, t: Sequence[int]) -> bool:
    """a^K (1 + a^K) == 1 + a^K, required of every tuple when N is even."""
    if n % 2:
        raise ValueError(f"even_cond is only defined for even orders, got {n}")
    k = half(n)
    return shift(n, k, t[k]) == t[k]


@dataclass(frozen=True)
class Hyperstructure:
    """The table ``G[l] = 1 + a^l`` of a candidate hyperstructure.

    Build it with :meth:`construct`; the raw constructor takes an already
    completed table and is mostly useful for degenerate test inputs.
    """

    n: int
    g: tuple[int, ...]
    _full: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        check_order(self.n)
        if len(self.g) != self.n:
            raise ValueError(f"table must have {self.n} rows, got {len(self.g)}")
        object.__setattr__(self, "_full", full_mask(self.n))

    @classmethod
    def construct(cls, n: int, t: Sequence[int]) -> Hyperstructure:
        t = validate_tuple(n, t)
        k = half(n)
        g = list(t) + [0] * (n - k - 1)
        for j in range(k + 1, n):
            g[j] = shift(n, j, g[n - j])
        return cls(n, tuple(g))

    def __getitem__(self, i: int) -> int:
        return self.g[i]

    @property
    def order(self) -> int:
        return self.n

    def get_tuple(self) -> GeneratorTuple:
        return self.g[: half(self.n) + 1]

    # -- arithmetic on the cone; arguments are exponents in [0, N) --

    def sum2(self, k: int, l: int) -> int:
        """a^k + a^l."""
        return shift(self.n, k, self.g[(l - k) % self.n])

    def sum3(self, m: int, k: int, l: int) -> int:
        """(a^m + a^k) + a^l."""
        out = 0
        for i in iter_bits(self.sum2(m, k)):
            out |= self.sum2(i, l)
        return out

    def diff_positive(self, k: int, l: int) -> int:
        """Positive part of a^k - a^l: all i with a^k in a^i + a^l."""
        out = 0
        for i in range(self.n):
            if self.sum2(i, l) >> k & 1:
                out |= 1 << i
        return out

    def diff_negative(self, k: int, l: int) -> int:
        """Negative part of a^k - a^l: all i with -a^i in the difference."""
        out = 0
        for i in range(self.n):
            if self.sum2(i, k) >> l & 1:
                out |= 1 << i
        return out

    def sum_ppm_pos(self, m: int, k: int, l: int) -> int:
        """Positive part of (a^m + a^k) - a^l."""
        out = 0
        for i in iter_bits(self.sum2(m, k)):
            out |= self.diff_positive(i, l)
        return out

    def sum_pmp_pos(self, m: int, k: int, l: int, complete: bool = False) -> int:
        """Positive part of (a^m - a^k) + a^l, as the published method computes it.

        The published method only walks the positive and negative parts of
        a^m - a^k.  When m == k the difference also contains 0, and 0 + a^l
        contributes a^l; pass ``complete=True`` to include that term.
        """
        out = 0
        for i in iter_bits(self.diff_positive(m, k)):
            out |= self.sum2(i, l)
        for i in iter_bits(self.diff_negative(m, k)):
            out |= self.diff_positive(l, i)
        if complete and m == k:
            out |= 1 << l
        return out

    # -- hyperfield test --

    def failure(self, complete: bool = False) -> tuple[str, int, int] | None:
        """First violated reduced condition as ``(name, k, l)``, or None.

        ``name`` is one of ``"kr0"``, ``"kr1"``, ``"kr2"``; for kr0 the pair
        is ``(-1, -1)``.  Scan order is k-major over [0, N)^2.  ``complete``
        is forwarded to :meth:`sum_pmp_pos`; the default reproduces the
        published counts, ``complete=True`` agrees with the axiom oracle.
        """
        cover = 0
        for s in self.g:
            cover |= s
        if cover != self._full:
            return ("kr0", -1, -1)
        for k in range(self.n):
            for l in range(self.n):
                if self.sum3(0, k, l) != self.sum3(0, l, k):
                    return ("kr1", k, l)
                if self.sum_ppm_pos(0, k, l) != self.sum_pmp_pos(0, l, k, complete):
                    return ("kr2", k, l)
        return None

    def is_hyperfield(self, complete: bool = False) -> bool:
        return self.failure(complete) is None

    def describe(self) -> list[str]:
        """One line ``1+a^l = {...}`` per row of the table."""
        return [f"1+{fmt_element(l)} = {fmt_subset(self.n, s)}"
                for l, s in enumerate(self.g)]


def construct(n: int, t: Sequence[int]) -> Hyperstructure:
    return Hyperstructure.construct(n, t)


def is_hyperfield(n: int, t: Sequence[int], complete: bool = False) -> bool:
    """Full decision for a raw tuple, including the even-order condition."""
    t = validate_tuple(n, t)
    if n % 2 == 0 and not even_cond(n, t):
        return False
    return Hyperstructure.construct(n, t).is_hyperfield(complete)
