"""Compiled inner loop for the exhaustive scan.

Mirrors Hyperstructure.failure, c_characteristic and the canonical-form
test with lookup tables instead of per-call bit fiddling.  Only the
enumeration uses it; every public operation goes through the pure-Python
classes.
"""
from __future__ import annotations

from math import gcd

import numpy as np
from numba import njit

from .cone import scale, shift

MAX_KERNEL_ORDER = 16


def tables(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Rotation table, unit group, inverses and scaling table for order n."""
    size = 1 << n
    rot = np.array([[shift(n, k, c) for c in range(size)] for k in range(n)],
                   dtype=np.int64)
    units = [u for u in range(2, n) if gcd(u, n) == 1]
    inv = [pow(u, -1, n) for u in units]
    scal = np.array([[scale(n, u, c) for c in range(size)] for u in units],
                    dtype=np.int64).reshape(len(units), size)
    return rot, np.array(units, dtype=np.int64), np.array(inv, dtype=np.int64), scal


@njit(cache=True)
def _accepts(n, g, rot, s_tab, dp, complete):
    full = (1 << n) - 1
    cover = 0
    for i in range(n):
        cover |= g[i]
    if cover != full:
        return False
    for i in range(n):
        for l in range(n):
            s_tab[i, l] = rot[i, g[(l - i) % n]]
    for i in range(n):
        for l in range(n):
            dp[i, l] = 0
    for i in range(n):
        for l in range(n):
            m = s_tab[i, l]
            for k in range(n):
                if (m >> k) & 1:
                    dp[k, l] |= 1 << i
    for a in range(n):
        ga = g[a]
        for b in range(n):
            gb = g[b]
            x = 0
            y = 0
            for i in range(n):
                if (ga >> i) & 1:
                    x |= s_tab[i, b]
                if (gb >> i) & 1:
                    y |= s_tab[i, a]
            if x != y:
                return False
            # ((1 + a^a) - a^b)_+  vs  ((1 - a^b) + a^a)_+
            x = 0
            for i in range(n):
                if (ga >> i) & 1:
                    x |= dp[i, b]
            y = 0
            pos = dp[0, b]
            neg = dp[b, 0]
            for i in range(n):
                if (pos >> i) & 1:
                    y |= s_tab[i, a]
                if (neg >> i) & 1:
                    y |= dp[a, i]
            if complete and b == 0:
                y |= 1 << a
            if x != y:
                return False
    return True


@njit(cache=True)
def _cchar(n, g):
    cur = g[0]
    steps = 1
    limit = (1 << n) + 1
    while (cur & 1) == 0:
        nxt = 0
        for i in range(n):
            if (cur >> i) & 1:
                nxt |= g[i]
        cur = nxt
        steps += 1
        if steps > limit:
            return 0
    return steps


@njit(cache=True)
def _is_canonical(n, k, t, g, units, inv, scal):
    for j in range(units.shape[0]):
        ui = inv[j]
        for i in range(k + 1):
            v = scal[j, g[(i * ui) % n]]
            if v < t[i]:
                return False
            if v > t[i]:
                break
    return True


@njit(cache=True)
def scan_shard(n, s0, vals, last_vals, rot, units, inv, scal, complete):
    """Scan every tuple with leading entry ``s0``.

    Positions 1..K-1 range over ``vals`` and position K over ``last_vals``
    (the even-order filter is applied by the caller through that list).
    ``complete`` has the meaning of Hyperstructure.failure's flag.
    Returns accepted counts indexed by C-char, then the canonical tuples
    and their C-char values in lexicographic order.
    """
    k = n // 2
    t = np.empty(k + 1, dtype=np.int64)
    idx = np.zeros(k + 1, dtype=np.int64)
    t[0] = s0
    for p in range(1, k + 1):
        t[p] = last_vals[0] if p == k else vals[0]
    g = np.empty(n, dtype=np.int64)
    s_tab = np.empty((n, n), dtype=np.int64)
    dp = np.empty((n, n), dtype=np.int64)
    counts = np.zeros((1 << n) + 2, dtype=np.int64)
    cap = 64
    out = np.empty((cap, k + 1), dtype=np.int64)
    out_c = np.empty(cap, dtype=np.int64)
    found = 0
    if k > 0 and last_vals.shape[0] == 0:
        return counts, out[:0], out_c[:0]
    while True:
        for i in range(k + 1):
            g[i] = t[i]
        for j in range(k + 1, n):
            g[j] = rot[j, g[n - j]]
        if _accepts(n, g, rot, s_tab, dp, complete):
            c = _cchar(n, g)
            counts[c] += 1
            if _is_canonical(n, k, t, g, units, inv, scal):
                if found == cap:
                    cap *= 2
                    bigger = np.empty((cap, k + 1), dtype=np.int64)
                    bigger_c = np.empty(cap, dtype=np.int64)
                    bigger[:found] = out[:found]
                    bigger_c[:found] = out_c[:found]
                    out = bigger
                    out_c = bigger_c
                out[found] = t
                out_c[found] = c
                found += 1
        p = k
        while p >= 1:
            idx[p] += 1
            if p == k:
                if idx[p] < last_vals.shape[0]:
                    t[p] = last_vals[idx[p]]
                    break
                idx[p] = 0
                t[p] = last_vals[0]
            else:
                if idx[p] < vals.shape[0]:
                    t[p] = vals[idx[p]]
                    break
                idx[p] = 0
                t[p] = vals[0]
            p -= 1
        if p < 1:
            break
    return counts, out[:found], out_c[:found]
