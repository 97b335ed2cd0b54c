"""Characteristic, C-characteristic and the non-quotient criterion."""
from __future__ import annotations

import logging
from dataclasses import dataclass

from .cone import iter_bits
from .full_model import FullModel
from .hyperstructure import Hyperstructure

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CCharResult:
    value: int  # 0: 1 never reappears in 1 + ... + 1
    steps: int


def c_characteristic(h: Hyperstructure) -> CCharResult:
    """Least n with 1 in 1 + ... + 1 (n+1 terms), computed on the cone.

    The running sum I_n = 1 + ... + 1 (n+1 terms) stays in P, and
    I_{n+1} = I_n + 1 is the union of G[i] over i in I_n.  The sequence of
    states is deterministic, so a repeated state without 1 means value 0.
    """
    cur = h.g[0]
    steps = 1
    seen = {cur}
    while not cur & 1:
        nxt = 0
        for i in iter_bits(cur):
            nxt |= h.g[i]
        steps += 1
        if nxt in seen:
            return CCharResult(0, steps)
        seen.add(nxt)
        cur = nxt
    return CCharResult(steps, steps)


def _iterate_ones(model: FullModel, target: int) -> int:
    """Least n >= 1 with ``target`` in 1 + ... + 1 (n terms); 0 if never."""
    n = model.n
    one = n + 1
    cur = 1 << one
    count = 1
    seen = set()
    while not cur >> target & 1:
        if cur in seen:
            return 0
        seen.add(cur)
        cur = model.add_set(cur, one)
        count += 1
    return count


def characteristic(model: FullModel) -> int:
    """Least n with 0 in 1 + ... + 1 (n terms) on the signed carrier; 0 if none."""
    return _iterate_ones(model, model.n)


def characteristic_is_zero(model: FullModel) -> bool:
    return characteristic(model) == 0


def c_characteristic_signed(model: FullModel) -> int:
    """C-characteristic computed on the full carrier (independent of the cone loop)."""
    n = model.n
    one = n + 1
    cur = model.add(one, one).carrier_mask(n)
    count = 1
    seen = set()
    while not cur >> one & 1:
        if cur in seen:
            return 0
        seen.add(cur)
        cur = model.add_set(cur, one)
        count += 1
    return count


def non_quotient_flag(c: CCharResult) -> bool:
    """True when C-char > 1, which rules out a Krasner quotient hyperfield."""
    if c.value == 0:
        log.warning("C-characteristic 0 on a finite real hyperfield; flagged as anomaly")
        return True
    return c.value > 1
