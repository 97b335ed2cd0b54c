"""Command line interface: ``realhyper <command> ...``."""
from __future__ import annotations

import argparse
import logging
import re
import sys

from . import classify
from .full_model import FORMATS, axiom_oracle, build_table, emit_table
from .hyperstructure import Hyperstructure, even_cond, half, validate_tuple
from .invariants import c_characteristic, non_quotient_flag

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ARITY = 3
EXIT_RANGE = 4
EXIT_EVEN = 5
EXIT_NOT_HYPERFIELD = 6
EXIT_IO = 7
EXIT_ORDER = 8
EXIT_PARSE = 9


class CliError(Exception):
    def __init__(self, code: str, status: int, message: str):
        super().__init__(message)
        self.code = code
        self.status = status


def parse_tuple(n: int, text: str) -> tuple[int, ...]:
    body = re.sub(r"^\s*H?\s*\(|\)\s*$", "", text.strip())
    try:
        t = tuple(int(x) for x in body.split(","))
    except ValueError:
        raise CliError("bad_tuple", EXIT_ARITY, f"cannot read tuple {text!r}") from None
    if len(t) != half(n) + 1:
        raise CliError("bad_arity", EXIT_ARITY,
                       f"order {n} needs {half(n) + 1} entries, got {len(t)}")
    try:
        return validate_tuple(n, t)
    except ValueError as exc:
        raise CliError("bad_entry", EXIT_RANGE, str(exc)) from None


def _order(n: int) -> int:
    if not 1 <= n <= 32:
        raise CliError("bad_order", EXIT_ORDER, f"order must lie in [1, 32], got {n}")
    return n


def _structure(n: int, t: tuple[int, ...]) -> Hyperstructure:
    if n % 2 == 0 and not even_cond(n, t):
        raise CliError("even_cond", EXIT_EVEN,
                       f"a^{half(n)}(1+a^{half(n)}) != 1+a^{half(n)} for s_{half(n)}={t[-1]}")
    return Hyperstructure.construct(n, t)


def _hyperfield(n: int, t: tuple[int, ...], complete: bool) -> Hyperstructure:
    h = _structure(n, t)
    if not h.is_hyperfield(complete):
        raise CliError("not_hyperfield", EXIT_NOT_HYPERFIELD,
                       f"H{classify._fmt_tuple(t)} is not a hyperfield")
    return h


def _fmt(t) -> str:
    return "H" + classify._fmt_tuple(t)


def cmd_verify(args, out) -> int:
    n = _order(args.order)
    t = parse_tuple(n, args.tuple)
    print(f"tuple: {_fmt(t)}", file=out)
    if n % 2 == 0 and not even_cond(n, t):
        print("verdict: reject", file=out)
        print("reason: even_cond", file=out)
        return EXIT_OK
    h = Hyperstructure.construct(n, t)
    fail = h.failure(args.complete)
    if fail is None:
        c = c_characteristic(h)
        print("verdict: accept", file=out)
        print(f"cchar: {c.value}", file=out)
        print(f"nonquotient: {str(non_quotient_flag(c)).lower()}", file=out)
    else:
        name, k, l = fail
        print("verdict: reject", file=out)
        print(f"reason: {name}" + (f" at k={k} l={l}" if k >= 0 else ""), file=out)
    if args.oracle:
        verdict = axiom_oracle(build_table(h))
        agree = verdict.ok == (fail is None)
        print(f"oracle: {verdict.describe(n)} ({'agrees' if agree else 'DISAGREES'})", file=out)
    return EXIT_OK


def cmd_cchar(args, out) -> int:
    n = _order(args.order)
    t = parse_tuple(n, args.tuple)
    c = c_characteristic(_hyperfield(n, t, args.complete))
    print(f"cchar: {c.value}", file=out)
    print(f"nonquotient: {str(non_quotient_flag(c)).lower()}", file=out)
    return EXIT_OK


def cmd_orbit(args, out) -> int:
    n = _order(args.order)
    t = parse_tuple(n, args.tuple)
    _hyperfield(n, t, args.complete)
    for v in classify.iso_orbit(n, t):
        print(_fmt(v), file=out)
    return EXIT_OK


def cmd_table(args, out) -> int:
    n = _order(args.order)
    t = parse_tuple(n, args.tuple)
    out.write(emit_table(build_table(_structure(n, t)), args.format))
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    n = args.order
    cases = classify.space_size(n) if 1 <= n <= 32 else 0
    print(f"order {n}: {cases:,} cases", file=sys.stderr)
    try:
        report, _ = classify.enumerate_hyperfields(
            n, min_cchar=args.min_cchar, workers=args.workers, out_dir=args.out,
            engine=args.engine, max_order=args.max_order, confirm=args.yes,
            complete=args.complete)
    except classify.ConfirmationRequired as exc:
        raise CliError("confirm", EXIT_ORDER, str(exc)) from None
    except PermissionError as exc:
        raise CliError("io", EXIT_IO, str(exc)) from None
    except OSError as exc:
        raise CliError("io", EXIT_IO, str(exc)) from None
    except ValueError as exc:
        raise CliError("bad_order", EXIT_ORDER, str(exc)) from None
    _print_report(report, out)
    return EXIT_OK


def cmd_summarize(args, out) -> int:
    try:
        report = classify.summarize(args.input, args.order)
    except classify.RecordParseError as exc:
        raise CliError("parse", EXIT_PARSE, str(exc)) from None
    except ValueError as exc:
        raise CliError("parse", EXIT_PARSE, str(exc)) from None
    except OSError as exc:
        raise CliError("io", EXIT_IO, str(exc)) from None
    _print_report(report, out)
    return EXIT_OK


def _print_report(report: classify.ClassificationReport, out) -> None:
    print(f"N: {report.n}", file=out)
    print(f"cases_scanned: {report.cases_scanned}", file=out)
    print(f"hyperfields: {report.hyperfields}", file=out)
    print(f"classes: {report.classes}", file=out)
    for c, (hf, cl) in sorted(report.per_cchar.items()):
        print(f"cchar {c}: hyperfields {hf} classes {cl}", file=out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="realhyper",
        description="Real hyperfields with a cyclic positive cone.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_tuple(sp):
        sp.add_argument("--order", "-N", type=int, required=True)
        sp.add_argument("--tuple", "-t", required=True,
                        help='generator tuple, e.g. "6,3" or "H(6,3)"')
        sp.add_argument("--complete", action="store_true",
                        help="include the 0 + a^l term in the kr2 test")
        return sp

    sp = with_tuple(sub.add_parser("verify", help="decide one tuple"))
    sp.add_argument("--oracle", action="store_true",
                    help="also run the brute-force axiom check")
    sp.set_defaults(func=cmd_verify)

    with_tuple(sub.add_parser("cchar", help="C-characteristic")).set_defaults(func=cmd_cchar)
    with_tuple(sub.add_parser("orbit", help="isomorphism orbit")).set_defaults(func=cmd_orbit)
    sp = with_tuple(sub.add_parser("table", help="addition table"))
    sp.add_argument("--format", "-f", choices=FORMATS, default="plain")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("enumerate", help="classify all hyperfields of one order")
    sp.add_argument("--order", "-N", type=int, required=True)
    sp.add_argument("--min-cchar", type=int, default=1)
    sp.add_argument("--workers", "-j", type=int, default=None,
                    help=f"worker processes (default: ${classify.WORKERS_ENV} or CPU count)")
    sp.add_argument("--out", default=None, help="directory for class files")
    sp.add_argument("--engine", choices=("numba", "python"), default="numba")
    sp.add_argument("--max-order", type=int, default=classify.DEFAULT_MAX_ORDER)
    sp.add_argument("--yes", action="store_true",
                    help=f"allow scans above {classify.CONFIRM_ABOVE:.0e} cases")
    sp.add_argument("--complete", action="store_true",
                    help="include the 0 + a^l term in the kr2 test")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("summarize", help="recount persisted class files")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--order", "-N", type=int, default=None)
    sp.set_defaults(func=cmd_summarize)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliError as exc:
        print(f"error: code={exc.code} exit={exc.status} message={exc}", file=sys.stderr)
        return exc.status


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run())
