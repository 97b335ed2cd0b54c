"""Enumeration and isomorphism classification of generator tuples.

Isomorphic hyperfields correspond to the action of the unit group of
Z/N on exponents, a^m -> a^(m u mod N).  Each class is represented by the
lexicographically smallest tuple of its orbit; the scan emits a class
exactly when it meets that tuple, so shards need no shared state.
"""
from __future__ import annotations

import json
import logging
import multiprocessing as mp
import os
import re
import time
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import product
from math import gcd
from pathlib import Path

import numpy as np

from .cone import full_mask, scale, shift
from .hyperstructure import GeneratorTuple, Hyperstructure, even_cond, half, validate_tuple
from .invariants import CCharResult, c_characteristic, non_quotient_flag

log = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 8
CONFIRM_ABOVE = 10**10
WORKERS_ENV = "REALHYPER_WORKERS"


class ConfirmationRequired(RuntimeError):
    """The requested scan is larger than CONFIRM_ABOVE cases."""


class RecordParseError(ValueError):
    def __init__(self, path, lineno: int, line: str, reason: str):
        super().__init__(f"{path}:{lineno}: {reason}: {line!r}")
        self.path = path
        self.lineno = lineno


# -- orbits --

def units(n: int) -> list[int]:
    return [u for u in range(1, n) if gcd(u, n) == 1] or [1]


def image_tuple(h: Hyperstructure, u: int) -> GeneratorTuple:
    """Tuple of the hyperfield transported along a^m -> a^(m u mod N)."""
    n = h.n
    u_inv = pow(u, -1, n) if n > 1 else 0
    return tuple(scale(n, u, h.g[i * u_inv % n]) for i in range(half(n) + 1))


def iso_orbit(n: int, t: Sequence[int]) -> list[GeneratorTuple]:
    h = Hyperstructure.construct(n, t)
    return sorted({image_tuple(h, u) for u in units(n)})


def canonical_form(n: int, t: Sequence[int]) -> GeneratorTuple:
    return iso_orbit(n, t)[0]


def totient(n: int) -> int:
    return len(units(n)) if n > 1 else 1


# -- records --

@dataclass(frozen=True)
class ClassRecord:
    n: int
    canonical: GeneratorTuple
    orbit: tuple[GeneratorTuple, ...]
    cchar: int
    non_quotient: bool

    @classmethod
    def of(cls, n: int, t: Sequence[int], cchar: int | None = None) -> ClassRecord:
        orbit = tuple(iso_orbit(n, t))
        if cchar is None:
            cchar = c_characteristic(Hyperstructure.construct(n, t)).value
        return cls(n, orbit[0], orbit, cchar, non_quotient_flag(CCharResult(cchar, cchar)))

    def line(self) -> str:
        orbit = ";".join(_fmt_tuple(t) for t in self.orbit)
        return f"{_fmt_tuple(self.canonical)} | orbit: {orbit} | nonquotient: {int(self.non_quotient)}"


def _fmt_tuple(t: Iterable[int]) -> str:
    return "(" + ",".join(str(x) for x in t) + ")"


_LINE = re.compile(r"^\(([\d,]+)\) \| orbit: ([\d,();]+) \| nonquotient: ([01])$")
_FILE = re.compile(r"^N(\d+)_cchar(\d+)\.classes$")


def parse_line(n: int, cchar: int, line: str) -> ClassRecord:
    m = _LINE.match(line)
    if not m:
        raise ValueError("malformed record")
    canonical = tuple(int(x) for x in m.group(1).split(","))
    orbit = tuple(tuple(int(x) for x in part.strip("()").split(","))
                  for part in m.group(2).split(";"))
    if canonical != min(orbit):
        raise ValueError("canonical tuple is not the orbit minimum")
    for t in orbit:
        validate_tuple(n, t)
    return ClassRecord(n, canonical, orbit, cchar, m.group(3) == "1")


def class_file(n: int, cchar: int) -> str:
    return f"N{n}_cchar{cchar}.classes"


def report_file(n: int) -> str:
    return f"N{n}.report.json"


@dataclass
class ClassificationReport:
    n: int
    cases_scanned: int = 0
    hyperfields: int = 0
    classes: int = 0
    per_cchar: dict[int, tuple[int, int]] = field(default_factory=dict)
    wall_time: float = 0.0
    min_cchar: int = 1
    complete: bool = False

    def to_json(self) -> str:
        d = {
            "N": self.n,
            "cases_scanned": self.cases_scanned,
            "hyperfields": self.hyperfields,
            "classes": self.classes,
            "min_cchar": self.min_cchar,
            "complete": self.complete,
            "wall_time": round(self.wall_time, 3),
        }
        for c, (hf, cl) in sorted(self.per_cchar.items()):
            d[f"cchar{c}_hyperfields"] = hf
            d[f"cchar{c}_classes"] = cl
        return json.dumps(d, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ClassificationReport:
        d = json.loads(text)
        per = {}
        for key, val in d.items():
            m = re.fullmatch(r"cchar(\d+)_hyperfields", key)
            if m:
                c = int(m.group(1))
                per[c] = (val, d[f"cchar{c}_classes"])
        return cls(d["N"], d["cases_scanned"], d["hyperfields"], d["classes"],
                   per, d.get("wall_time", 0.0), d.get("min_cchar", 1),
                   d.get("complete", False))

    def totals(self) -> tuple:
        """Everything except timing, for comparisons."""
        return (self.n, self.cases_scanned, self.hyperfields, self.classes,
                tuple(sorted(self.per_cchar.items())))


def space_size(n: int) -> int:
    return full_mask(n) ** (half(n) + 1)


# -- scanning --

def _last_values(n: int) -> list[int]:
    vals = range(1, full_mask(n) + 1)
    if n % 2:
        return list(vals)
    k = half(n)
    return [s for s in vals if shift(n, k, s) == s]


def _shard_python(n: int, s0: int, complete: bool):
    """Reference scan of one shard with the pure-Python classes."""
    k = half(n)
    top = full_mask(n)
    counts: dict[int, int] = {}
    canon: list[tuple[GeneratorTuple, int]] = []
    for rest in product(range(1, top + 1), repeat=k):
        t = (s0,) + rest
        if n % 2 == 0 and not even_cond(n, t):
            continue
        h = Hyperstructure.construct(n, t)
        if not h.is_hyperfield(complete):
            continue
        c = c_characteristic(h).value
        counts[c] = counts.get(c, 0) + 1
        if canonical_form(n, t) == t:
            canon.append((t, c))
    return counts, canon


_TABLES: dict[int, tuple] = {}


def _shard_numba(n: int, s0: int, complete: bool):
    from ._kernel import scan_shard, tables

    if n not in _TABLES:
        rot, us, inv, scal = tables(n)
        vals = np.arange(1, full_mask(n) + 1, dtype=np.int64)
        last = np.array(_last_values(n), dtype=np.int64)
        _TABLES[n] = (vals, last, rot, us, inv, scal)
    vals, last, rot, us, inv, scal = _TABLES[n]
    counts, out, out_c = scan_shard(n, s0, vals, last, rot, us, inv, scal, complete)
    found = {c: int(v) for c, v in enumerate(counts) if v}
    canon = [(tuple(int(x) for x in row), int(c)) for row, c in zip(out, out_c)]
    return found, canon


def _run_shard(args):
    n, s0, min_cchar, engine, complete = args
    scan = _shard_numba if engine == "numba" else _shard_python
    counts, canon = scan(n, s0, complete)
    class_counts: dict[int, int] = {}
    records = []
    for t, c in canon:
        class_counts[c] = class_counts.get(c, 0) + 1
        if c >= min_cchar:
            records.append(ClassRecord.of(n, t, c))
    return s0, counts, class_counts, records


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def enumerate_hyperfields(
    n: int,
    *,
    min_cchar: int = 1,
    workers: int | None = None,
    out_dir: str | os.PathLike | None = None,
    engine: str = "numba",
    max_order: int = DEFAULT_MAX_ORDER,
    confirm: bool = False,
    complete: bool = False,
) -> tuple[ClassificationReport, list[ClassRecord]]:
    """Scan all (2^N-1)^(K+1) tuples of order ``n`` and classify the hyperfields.

    Records below ``min_cchar`` are counted in the report but not returned
    or written.  With ``out_dir`` set, one ``N<n>_cchar<c>.classes`` file per
    C-char value and an ``N<n>.report.json`` summary are written there.
    ``complete`` selects the completed kr2 test (see Hyperstructure.failure).
    """
    if engine not in ("numba", "python"):
        raise ValueError(f"unknown engine {engine!r}")
    if not 1 <= n <= max_order:
        raise ValueError(f"order {n} outside [1, {max_order}]")
    if engine == "numba":
        from ._kernel import MAX_KERNEL_ORDER
        if n > MAX_KERNEL_ORDER:
            raise ValueError(f"compiled scan supports orders up to {MAX_KERNEL_ORDER}")
    cases = space_size(n)
    if cases > CONFIRM_ABOVE and not confirm:
        raise ConfirmationRequired(
            f"order {n} means {cases:,} cases; pass confirm=True (CLI: --yes) to run it")
    out_path = Path(out_dir) if out_dir is not None else None
    if out_path is not None:
        out_path.mkdir(parents=True, exist_ok=True)
        if not os.access(out_path, os.W_OK):
            raise PermissionError(f"output directory {out_path} is not writable")

    workers = workers or default_workers()
    jobs = [(n, s0, min_cchar, engine, complete) for s0 in range(1, full_mask(n) + 1)]
    start = time.perf_counter()
    if workers > 1:
        if engine == "numba":
            _run_shard(jobs[0])  # compile once before forking
        with mp.get_context("fork").Pool(workers) as pool:
            results = list(pool.imap_unordered(_run_shard, jobs))
    else:
        results = [_run_shard(job) for job in jobs]
    results.sort(key=lambda r: r[0])

    hf: dict[int, int] = {}
    cl: dict[int, int] = {}
    records: list[ClassRecord] = []
    for _, counts, class_counts, recs in results:
        for c, v in counts.items():
            hf[c] = hf.get(c, 0) + v
        for c, v in class_counts.items():
            cl[c] = cl.get(c, 0) + v
        records.extend(recs)
    records.sort(key=lambda r: (r.cchar, r.canonical))
    if 0 in hf:
        log.warning("order %d: %d hyperfields with C-char 0", n, hf[0])

    report = ClassificationReport(
        n=n,
        cases_scanned=cases,
        hyperfields=sum(hf.values()),
        classes=sum(cl.values()),
        per_cchar={c: (hf[c], cl.get(c, 0)) for c in sorted(hf)},
        wall_time=time.perf_counter() - start,
        min_cchar=min_cchar,
        complete=complete,
    )
    if out_path is not None:
        write_records(out_path, report, records)
    return report, records


def write_records(out_dir: Path, report: ClassificationReport,
                  records: Sequence[ClassRecord]) -> None:
    n = report.n
    for old in out_dir.glob(f"N{n}_cchar*.classes"):
        old.unlink()
    by_cchar: dict[int, list[ClassRecord]] = {}
    for r in records:
        by_cchar.setdefault(r.cchar, []).append(r)
    for c, recs in sorted(by_cchar.items()):
        with open(out_dir / class_file(n, c), "w") as f:
            for r in sorted(recs, key=lambda r: r.canonical):
                f.write(r.line() + "\n")
    (out_dir / report_file(n)).write_text(report.to_json())


def read_records(directory: str | os.PathLike, n: int | None = None) -> list[ClassRecord]:
    records = []
    for path in sorted(Path(directory).glob("N*_cchar*.classes")):
        m = _FILE.match(path.name)
        if not m:
            continue
        order, cchar = int(m.group(1)), int(m.group(2))
        if n is not None and order != n:
            continue
        with open(path) as f:
            for lineno, line in enumerate(f, 1):
                line = line.rstrip("\n")
                if not line:
                    continue
                try:
                    records.append(parse_line(order, cchar, line))
                except ValueError as exc:
                    raise RecordParseError(path, lineno, line, str(exc)) from None
    return records


def summarize(directory: str | os.PathLike, n: int | None = None) -> ClassificationReport:
    """Recompute the report from persisted class files."""
    directory = Path(directory)
    records = read_records(directory, n)
    orders = {r.n for r in records}
    if n is None:
        if len(orders) > 1:
            raise ValueError(f"{directory} holds several orders {sorted(orders)}; pick one")
        n = orders.pop() if orders else 0
    per: dict[int, list[int]] = {}
    for r in records:
        slot = per.setdefault(r.cchar, [0, 0])
        slot[0] += len(r.orbit)
        slot[1] += 1
    report = ClassificationReport(
        n=n,
        cases_scanned=space_size(n) if n else 0,
        hyperfields=sum(v[0] for v in per.values()),
        classes=sum(v[1] for v in per.values()),
        per_cchar={c: (v[0], v[1]) for c, v in sorted(per.items())},
    )
    stored = directory / report_file(n) if n else None
    if stored is not None and stored.exists():
        saved = ClassificationReport.from_json(stored.read_text())
        report.wall_time = saved.wall_time
        report.min_cchar = saved.min_cchar
        report.complete = saved.complete
    return report
