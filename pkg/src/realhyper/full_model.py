"""The hyperfield on the signed carrier H = -P u {0} u P.

Carrier elements are addressed by an index in [0, 2N]:

    index:    0          ...  N-1   N   N+1  ...  2N
    element:  -a^(N-1)   ...  -1    0   1    ...  a^(N-1)

Two independent constructions of the addition table are provided:
:func:`from_generators` applies ``x + y = x * A_{x^-1 y}`` literally to the
full family ``{A_x}``; :func:`build_table` fills the table the way the
printed tables are produced (cone sums, differences, mirroring).  The
brute-force :func:`axiom_oracle` checks the hyperfield axioms on any model.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .cone import iter_bits, shift
from .hyperstructure import Hyperstructure

FORMATS = ("plain", "markdown", "latex", "csv")


@dataclass(frozen=True)
class SignedSubset:
    """Subset of the carrier as (negative exponents, zero flag, positive exponents)."""

    neg: int = 0
    zero: bool = False
    pos: int = 0

    def negated(self) -> SignedSubset:
        return SignedSubset(self.pos, self.zero, self.neg)

    def times(self, n: int, sign: int, k: int) -> SignedSubset:
        """Multiply every element by ``sign * a^k``."""
        out = SignedSubset(shift(n, k, self.neg), self.zero, shift(n, k, self.pos))
        return out if sign > 0 else out.negated()

    def triple(self) -> tuple[int, bool, int]:
        """The integer triple used in the printed pseudocode: (-neg, zero, pos)."""
        return (-self.neg, self.zero, self.pos)

    def carrier_mask(self, n: int) -> int:
        """Bitmask over carrier indices."""
        mask = 1 << n if self.zero else 0
        for e in iter_bits(self.neg):
            mask |= 1 << (n - 1 - e)
        for e in iter_bits(self.pos):
            mask |= 1 << (n + 1 + e)
        return mask

    @classmethod
    def from_carrier_mask(cls, n: int, mask: int) -> SignedSubset:
        neg = pos = 0
        for i in iter_bits(mask):
            if i < n:
                neg |= 1 << (n - 1 - i)
            elif i > n:
                pos |= 1 << (i - n - 1)
        return cls(neg, bool(mask >> n & 1), pos)

    def __bool__(self) -> bool:
        return bool(self.neg or self.zero or self.pos)


# -- carrier element helpers --

def element(n: int, i: int) -> tuple[int, int]:
    """Carrier index -> (sign, exponent); zero is (0, 0)."""
    if i < n:
        return (-1, n - 1 - i)
    if i == n:
        return (0, 0)
    return (1, i - n - 1)


def index(n: int, sign: int, e: int) -> int:
    if sign == 0:
        return n
    e %= n
    return n - 1 - e if sign < 0 else n + 1 + e


def mul(n: int, i: int, j: int) -> int:
    si, ei = element(n, i)
    sj, ej = element(n, j)
    return index(n, si * sj, ei + ej)


def negate(n: int, i: int) -> int:
    return 2 * n - i


def label(n: int, i: int) -> str:
    sign, e = element(n, i)
    if sign == 0:
        return "0"
    body = "1" if e == 0 else ("a" if e == 1 else f"a^{e}")
    return "-" + body if sign < 0 else body


# -- the generator family --

def negative_generators(h: Hyperstructure) -> list[SignedSubset]:
    """The sets A_{-a^k} = 1 - a^k for k in [0, N)."""
    n = h.n
    out = []
    for k in range(n):
        neg = pos = 0
        for m in range(n):
            # -a^m in A_{-a^k}  iff  a^k in A_{a^m}
            if h.g[m] >> k & 1:
                neg |= 1 << m
            # a^m in A_{-a^k}  iff  a^-k in A_{a^(m-k)}
            if h.g[(m - k) % n] >> (-k % n) & 1:
                pos |= 1 << m
        # 0 in A_{-x} iff x in A_0 = {1}
        out.append(SignedSubset(neg, k == 0, pos))
    return out


def generator_family(h: Hyperstructure) -> list[SignedSubset]:
    """A_x = 1 + x for every carrier index x."""
    n = h.n
    minus = negative_generators(h)
    fam = [SignedSubset()] * (2 * n + 1)
    for k in range(n):
        fam[index(n, 1, k)] = SignedSubset(0, False, h.g[k])
        fam[index(n, -1, k)] = minus[k]
    fam[n] = SignedSubset(0, False, 1)
    return fam


@dataclass(frozen=True)
class FullModel:
    """(2N+1) x (2N+1) addition table over the signed carrier."""

    n: int
    table: tuple[tuple[SignedSubset, ...], ...]

    @property
    def size(self) -> int:
        return 2 * self.n + 1

    def add(self, i: int, j: int) -> SignedSubset:
        return self.table[i][j]

    def masks(self) -> list[list[int]]:
        return [[e.carrier_mask(self.n) for e in row] for row in self.table]

    def boolean_tensor(self) -> np.ndarray:
        """T[x, y, w] is True iff w is in x + y."""
        m = self.size
        t = np.zeros((m, m, m), dtype=bool)
        for x, row in enumerate(self.masks()):
            for y, mask in enumerate(row):
                for w in iter_bits(mask):
                    t[x, y, w] = True
        return t

    def add_set(self, mask: int, j: int) -> int:
        """A + y for a carrier mask A (union of a + y over a in A)."""
        out = 0
        for i in iter_bits(mask):
            out |= self.table[i][j].carrier_mask(self.n)
        return out


def from_generators(h: Hyperstructure) -> FullModel:
    """Addition defined by x + y = x A_{x^-1 y} and 0 + y = {y}."""
    n = h.n
    fam = generator_family(h)
    rows = []
    for x in range(2 * n + 1):
        sx, ex = element(n, x)
        row = []
        for y in range(2 * n + 1):
            if sx == 0:
                row.append(SignedSubset.from_carrier_mask(n, 1 << y))
                continue
            sy, ey = element(n, y)
            q = index(n, sx * sy, ey - ex)
            row.append(fam[q].times(n, sx, ex))
        rows.append(tuple(row))
    return FullModel(n, tuple(rows))


def build_table(h: Hyperstructure) -> FullModel:
    """Fill the addition table from cone sums and differences."""
    n = h.n
    size = 2 * n + 1
    tab: list[list[SignedSubset | None]] = [[None] * size for _ in range(size)]
    tab[n][n] = SignedSubset(0, True, 0)
    for j in range(size):
        if j != n:
            tab[n][j] = tab[j][n] = SignedSubset.from_carrier_mask(n, 1 << j)
    # a^p + a^q, p <= q
    for k in range(n + 1, size):
        for l in range(k, size):
            tab[k][l] = SignedSubset(0, False, h.sum2(k - n - 1, l - n - 1))
    # -a^p - a^q = -(a^p + a^q)
    for k in range(n):
        for l in range(k, n):
            tab[k][l] = tab[2 * n - l][2 * n - k].negated()
    # -a^p + a^q
    for k in range(n):
        p = n - 1 - k
        for l in range(n + 1, size):
            q = l - n - 1
            tab[k][l] = SignedSubset(h.diff_negative(q, p), p == q, h.diff_positive(q, p))
    for l in range(size):
        for k in range(l + 1, size):
            tab[k][l] = tab[l][k]
    return FullModel(n, tuple(tuple(row) for row in tab))


# -- brute-force verification --

@dataclass(frozen=True)
class Verdict:
    ok: bool
    axiom: str | None = None
    witness: tuple[int, ...] | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def describe(self, n: int) -> str:
        if self.ok:
            return "pass"
        w = ", ".join(label(n, i) for i in self.witness or ())
        return f"fail {self.axiom} at ({w}): {self.detail}"


def _first(mask: np.ndarray) -> tuple[int, ...] | None:
    hits = np.argwhere(mask)
    return tuple(int(v) for v in hits[0]) if len(hits) else None


def axiom_oracle(model: FullModel) -> Verdict:
    """Check the hyperfield and real-hyperfield axioms by exhaustion.

    Axioms are tried in the order: nonempty sums, h1 (associativity),
    h2 (commutativity), h3 (unique inverse), h4 (reversibility),
    h5 (distributivity), real (P + P inside P).  Witnesses are carrier
    indices, lexicographically first within the failing axiom.
    """
    n = model.n
    size = model.size
    t = model.boolean_tensor()
    ti = t.astype(np.int32)

    w = _first(~t.any(axis=2))
    if w:
        return Verdict(False, "nonempty", w, "x + y is empty")

    # (x + y) + z  and  x + (y + z), as [x, y, z, w]
    left = np.einsum("xyb,bzw->xyzw", ti, ti) > 0
    right = np.einsum("yzb,xbw->xyzw", ti, ti) > 0
    w = _first((left != right).any(axis=3))
    if w:
        return Verdict(False, "h1", w, "(x+y)+z != x+(y+z)")

    w = _first((t != t.transpose(1, 0, 2)).any(axis=2))
    if w:
        return Verdict(False, "h2", w, "x+y != y+x")

    zero_hits = t[:, :, n]
    for x in range(size):
        inverses = np.flatnonzero(zero_hits[x])
        if len(inverses) != 1:
            return Verdict(False, "h3", (x,),
                           f"{len(inverses)} elements y with 0 in x+y")
    neg = np.array([int(np.flatnonzero(zero_hits[x])[0]) for x in range(size)])

    # z in x + y  =>  x in -y + z
    rev = t[neg[:, None], np.arange(size)[None, :], :]  # rev[y, z, x] = x in -y+z
    w = _first(t & ~rev.transpose(2, 0, 1))
    if w:
        return Verdict(False, "h4", w, "z in x+y but x not in -y+z")

    table = np.array([[mul(n, i, j) for j in range(size)] for i in range(size)])
    for z in range(size):
        mz = table[z]
        image = np.zeros_like(t)
        xs, ys, ws = np.nonzero(t)
        image[xs, ys, mz[ws]] = True
        direct = t[mz[:, None], mz[None, :], :]
        w = _first((image != direct).any(axis=2))
        if w:
            return Verdict(False, "h5", (z,) + w, "z(x+y) != zx+zy")

    pos = slice(n + 1, size)
    w = _first(t[pos, pos, : n + 1].any(axis=2))
    if w:
        return Verdict(False, "real", (w[0] + n + 1, w[1] + n + 1),
                       "P + P leaves P")
    return Verdict(True)


# -- rendering --

def _sym(n: int, sign: int, e: int, tex: bool) -> str:
    body = "1" if e == 0 else ("a" if e == 1 else (f"a^{{{e}}}" if tex else f"a^{e}"))
    if sign == 0:
        return "0"
    if sign == 2:
        return ("\\pm " if tex else "±") + body
    return "-" + body if sign < 0 else body


def format_set(n: int, s: SignedSubset, contract: bool = False, tex: bool = False) -> str:
    """Brace notation; with ``contract`` every pair x, -x is printed as ±x."""
    items = []
    both = s.neg & s.pos if contract else 0
    for e in range(n - 1, -1, -1):
        if s.neg >> e & 1 and not both >> e & 1:
            items.append(_sym(n, -1, e, tex))
    if s.zero:
        items.append("0")
    for e in range(n):
        if both >> e & 1:
            items.append(_sym(n, 2, e, tex))
        elif s.pos >> e & 1:
            items.append(_sym(n, 1, e, tex))
    if tex:
        return "$\\{" + ",".join(items) + "\\}$"
    return "{" + ",".join(items) + "}"


def _grid(model: FullModel, contract: bool, tex: bool = False) -> list[list[str]]:
    n = model.n
    size = model.size
    if tex:
        head = ["$+$"] + [f"${_sym(n, *element(n, i), True)}$" for i in range(size)]
    else:
        head = ["+"] + [label(n, i) for i in range(size)]
    rows = [head]
    for i in range(size):
        rows.append([head[i + 1]] + [format_set(n, model.table[i][j], contract, tex)
                                     for j in range(size)])
    return rows


def emit_table(model: FullModel, fmt: str = "plain") -> str:
    if fmt == "plain":
        rows = _grid(model, contract=True)
        widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
        return "\n".join("  ".join(cell.ljust(wd) for cell, wd in zip(r, widths)).rstrip()
                         for r in rows) + "\n"
    if fmt == "markdown":
        rows = _grid(model, contract=False)
        lines = ["| " + " | ".join(rows[0]) + " |",
                 "|" + "---|" * len(rows[0])]
        lines += ["| " + " | ".join(r) + " |" for r in rows[1:]]
        return "\n".join(lines) + "\n"
    if fmt == "latex":
        rows = _grid(model, contract=True, tex=True)
        cols = "|c|" + "c|" * (len(rows[0]) - 1)
        out = [f"\\begin{{tabular}}{{{cols}}} \\hline"]
        out += [" & ".join(r) + " \\\\ \\hline" for r in rows]
        out.append("\\end{tabular}")
        return "\n".join(out) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, delimiter=";", lineterminator="\n")
        writer.writerows(_grid(model, contract=False))
        return buf.getvalue()
    raise ValueError(f"unknown table format {fmt!r}; expected one of {', '.join(FORMATS)}")
