"""``drfaber`` command line.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import redirect_stdout
from typing import Sequence

from . import faber, lattice
from .drbracket import MemoStore, Mode, bracket_polynomial, genusg_bracket, parse_parts
from .numbase import format_rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _mode(text: str) -> Mode:
    try:
        return Mode.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cache", metavar="PATH", help="load and save bracket values in PATH")
    common.add_argument("--stats", action="store_true", help="report bracket evaluations on stderr")
    common.add_argument("--threads", type=int, default=1, help="worker threads for independent queries")

    parser = _Parser(prog="drfaber", description="Exact DR-cycle brackets and Faber's intersection numbers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bracket", parents=[common], help="evaluate one DR bracket")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--parts", required=True, help="a1:d1,a2:d2,...")
    p.add_argument("--mode", type=_mode, default=Mode.SIMPLIFIED, help="simplified|exact")

    p = sub.add_parser("poly", parents=[common], help="bracket as a polynomial in the multiplicities")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--psi", type=_ints, required=True, help="d1,d2,... with sum n-1")
    p.add_argument("--mode", type=_mode, default=Mode.SIMPLIFIED)

    p = sub.add_parser("integral", parents=[common], help="lambda_g lambda_{g-1} psi integrals")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--psi", type=_ints, required=True)
    p.add_argument("--method", choices=["binomial", "coeff", "closed", "all"], default="all")
    p.add_argument("--form", choices=["extended", "original"], default="extended")
    p.add_argument("--a", type=_ints, help="auxiliary multiplicities a1,...,an")
    p.add_argument("--b", type=_ints, help="forgotten-point multiplicities b1,...,bg")
    p.add_argument("--mode", type=_mode, default=Mode.SIMPLIFIED)

    p = sub.add_parser("faber", parents=[common], help="original-form integral against Faber's formula")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--psi", type=_ints, required=True, help="positive d1,... with sum g+n-2")

    p = sub.add_parser("coeff", parents=[common], help="coefficient bracket <prod |p;c|>")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--entries", required=True, help="p1:c1,p2:c2,...")
    p.add_argument("--method", choices=["paths", "poly", "all"], default="paths")

    p = sub.add_parser("verify", parents=[common], help="sweep all pathways over a range")
    p.add_argument("--gmin", type=int, default=2)
    p.add_argument("--gmax", type=int, default=3)
    p.add_argument("--nmax", type=int, default=3)

    p = sub.add_parser("selftest", parents=[common], help="run the property suites")
    scale = p.add_mutually_exclusive_group()
    scale.add_argument("--quick", action="store_true", help="genus <= 2 (default)")
    scale.add_argument("--full", action="store_true", help="genus <= 4")
    return parser


def _emit_values(args, labelled: list[tuple[str, object]]) -> None:
    if args.json:
        print(json.dumps({k: format_rational(v) for k, v in labelled}))
    else:
        for _, v in labelled:
            print(format_rational(v))


def _cmd_bracket(args, store: MemoStore) -> int:
    value = genusg_bracket(args.genus, parse_parts(args.parts), args.mode, store)
    _emit_values(args, [("value", value)])
    return EXIT_OK


def _cmd_poly(args, store: MemoStore) -> int:
    poly = bracket_polynomial(args.genus, args.psi, args.mode, store)
    if args.json:
        terms = [{"exponent": list(e), "coeff": format_rational(c)} for e, c in poly.sorted_terms()]
        print(json.dumps({"nvars": poly.nvars, "terms": terms}))
    else:
        print(poly.to_text())
    return EXIT_OK


def _cmd_integral(args, store: MemoStore) -> int:
    g, d = args.genus, tuple(args.psi)
    methods = ["binomial", "coeff", "closed"] if args.method == "all" else [args.method]
    spec = None
    if args.a is not None or args.b is not None:
        spec = faber.ReductionSpec(tuple(args.a or [1] * len(d)), tuple(args.b or [1] * g))
    values = []
    for method in methods:
        if args.form == "extended":
            if method == "binomial":
                v = faber.integral_via_binomial(g, d, spec, store, args.mode)
            elif method == "coeff":
                v = faber.integral_via_coeff(g, d, store)
            else:
                v = faber.closed_form_extended(g, d)
        else:
            if method == "binomial":
                v = faber.faber_original(
                    g, d, store, extended=lambda gg, dd: faber.integral_via_binomial(gg, dd, None, store, args.mode)
                )
            elif method == "coeff":
                v = faber.faber_original(g, d, store, extended=lambda gg, dd: faber.integral_via_coeff(gg, dd, store))
            else:
                v = faber.closed_form_original(g, d)
        values.append((method, v))
    _emit_values(args, values)
    return EXIT_OK if len({v for _, v in values}) == 1 else EXIT_FAIL


def _cmd_faber(args, store: MemoStore) -> int:
    g, d = args.genus, tuple(args.psi)
    value = faber.faber_original(g, d, store)
    closed = faber.closed_form_original(g, d)
    _emit_values(args, [("value", value), ("closed", closed)])
    return EXIT_OK if value == closed else EXIT_FAIL


def _cmd_coeff(args, store: MemoStore) -> int:
    entries = [(p.a, p.d) for p in parse_parts(args.entries)]
    values = []
    if args.method in ("paths", "all"):
        values.append(("paths", lattice.coeff_bracket(args.genus, entries)))
    if args.method in ("poly", "all"):
        ps = [p for p, _ in entries]
        cs = [c for _, c in entries]
        values.append(("poly", lattice.coeff_from_polynomial(args.genus, cs, ps, store)))
    _emit_values(args, values)
    return EXIT_OK if len({v for _, v in values}) == 1 else EXIT_FAIL


def _cmd_verify(args, store: MemoStore) -> int:
    report = faber.verify_range(args.gmin, args.gmax, args.nmax, store, threads=args.threads)
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_selftest(args, store: MemoStore) -> int:
    from .selftest import run_selftest

    return EXIT_OK if run_selftest(full=args.full, store=store) else EXIT_FAIL


COMMANDS = {
    "bracket": _cmd_bracket,
    "poly": _cmd_poly,
    "integral": _cmd_integral,
    "faber": _cmd_faber,
    "coeff": _cmd_coeff,
    "verify": _cmd_verify,
    "selftest": _cmd_selftest,
}


def dispatch(argv: Sequence[str], store: MemoStore | None = None) -> int:
    """Parse ``argv`` and run one subcommand, writing results to stdout."""
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as exc:
        print(f"drfaber: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if store is None:
            store = MemoStore(args.cache)
        code = COMMANDS[args.command](args, store)
        if args.cache:
            store.save(args.cache)
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    if args.stats:
        print(f"evaluations={store.evaluations} hits={store.hits} stored={len(store)}", file=sys.stderr)
    return code


def run(argv: Sequence[str], store: MemoStore | None = None) -> tuple[int, str]:
    """Like :func:`dispatch`, but return ``(exit code, stdout text)``."""
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = dispatch(argv, store)
    return code, buf.getvalue()


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(dispatch(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
