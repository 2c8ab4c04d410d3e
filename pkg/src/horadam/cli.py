"""Command-line front end.

Exit codes: 0 success, 1 identity failure or disagreement, 2 usage/parse
error, 3 domain error.  Default precision comes from ``HORADAM_PRECISION``
(falls back to 128 bits).
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from fractions import Fraction

from ._numeric import MIN_PRECISION, context, format_complex, format_real, rel_err
from .errors import DomainError, NoConvergence, PrecisionError
from .geomean import GeoInit, geo_exponents, geo_term_iterative, geo_term_symbolic, growth_ratio
from .identities import (
    EXACT_IDS,
    IdentityId,
    check_addition,
    check_d_sequence,
    check_i1,
    check_i2,
    check_i3,
    check_prop1,
    check_prop2,
    check_remark_lambda1,
    check_remark_trib,
    check_similarity,
    check_square_h,
    check_square_horadam,
    run_catalog,
)
from .recurrence import TRIBONACCI_T, RecurrenceParams, SequenceSpec, term_iterative, term_matrix
from .roots import binet_term, discriminant, fundamental_binet_check, solve_cubic

PRECISION_ENV = "HORADAM_PRECISION"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3
MATRIX_CAP = 10**7
ITER_CAP = 10**5


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational literal: {text!r}") from None


def rational_triple(text: str) -> tuple[Fraction, Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated values, got {text!r}")
    return tuple(rational(p) for p in parts)


def int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def precision(text: str) -> int:
    try:
        bits = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"precision must be an integer, got {text!r}") from None
    if bits < MIN_PRECISION:
        raise argparse.ArgumentTypeError(f"precision must be >= {MIN_PRECISION}")
    return bits


def _default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return 128
    try:
        return precision(raw)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{PRECISION_ENV}: {exc}") from None


# -- output ------------------------------------------------------------------

class Emitter:
    """Writes records as plain text, json-lines or CSV."""

    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout
        self._csv = None
        self._fields = None

    def record(self, rec: dict, plain: str | None = None):
        if self.fmt == "json-lines":
            self.out.write(json.dumps(rec) + "\n")
        elif self.fmt == "csv":
            if self._csv is None:
                self._fields = list(rec)
                self._csv = csv.writer(self.out, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
                self._csv.writerow(self._fields)
            row = []
            for k in self._fields:
                v = rec.get(k, "")
                row.append(json.dumps(v) if isinstance(v, (list, dict)) else v)
            self._csv.writerow(row)
        else:
            if plain is None:
                plain = " ".join(f"{k}={v}" for k, v in rec.items())
            self.out.write(plain + "\n")


def _frac(x) -> str:
    return str(Fraction(x))


# -- subcommands -------------------------------------------------------------

def cmd_term(args, emit: Emitter) -> int:
    spec = SequenceSpec(*args.spec, RecurrenceParams(*args.params))
    bits = args.precision
    n = args.n
    methods = ["iter", "matrix", "binet"] if args.method == "all" else [args.method]
    values = {}
    for m in methods:
        if m == "iter":
            values[m] = term_iterative(spec, n)
        elif m == "matrix":
            # n = 0 is outside the matrix form; fall back to iteration
            values[m] = term_matrix(spec, n) if n >= 1 else term_iterative(spec, n)
        else:
            values[m] = binet_term(spec, n, bits)
    status = EXIT_OK
    rec = {"n": n}
    for m, v in values.items():
        rec[m] = format_real(v, bits) if m == "binet" else _frac(v)
    if args.method == "all":
        exact = values["iter"]
        ctx = context(bits)
        agree = values["matrix"] == exact and rel_err(ctx, values["binet"], exact) <= ctx.ldexp(
            ctx.mpf(1), -(bits // 2)
        )
        rec["agree"] = bool(agree)
        if not agree:
            status = EXIT_FAIL
    if args.format == "plain":
        lines = [f"{m}: {rec[m]}" for m in values]
        if "agree" in rec:
            lines.append("agree: " + ("yes" if rec["agree"] else "NO"))
        text = lines[0].split(": ", 1)[1] if len(values) == 1 else "\n".join(lines)
        emit.record(rec, text)
    else:
        emit.record(rec)
    return status


def cmd_geomean(args, emit: Emitter) -> int:
    bits = args.precision
    if args.mode == "exponents":
        e = geo_exponents(args.n)
        emit.record(
            {"n": args.n, "num_a": e.num_a, "num_b": e.num_b, "num_c": e.num_c,
             "pow3": e.pow3, "denominator": e.denominator},
            str(e),
        )
        return EXIT_OK
    if args.init is None:
        raise UsageError("--init is required for value and trace modes")
    init = GeoInit(*args.init)
    if args.mode == "value":
        sym = geo_term_symbolic(init, args.n, bits)
        it = geo_term_iterative(init, args.n, bits)
        emit.record(
            {"n": args.n, "symbolic": format_real(sym, bits), "iterative": format_real(it, bits)},
            format_real(sym, bits),
        )
        return EXIT_OK
    # trace is CSV unless json-lines was asked for explicitly
    if emit.fmt == "plain":
        emit.fmt = "csv"
    for n in range(args.n + 1):
        ratio = growth_ratio(init, n, bits)
        emit.record({"n": n, "ratio": format_real(ratio, bits),
                     "deviation": format_real(abs(ratio - 1), bits)})
    return EXIT_OK


_SINGLE = {
    IdentityId.E4_ADDITION: (("spec", "params", "n", "m"),
                             lambda a: check_addition(_spec(a), a.n, a.m)),
    IdentityId.E5_SQUARE_H: (("params", "n"),
                             lambda a: check_square_h(RecurrenceParams(*a.params), a.n)),
    IdentityId.E6_SQUARE_HORADAM: (("spec", "params", "n"),
                                   lambda a: check_square_horadam(_spec(a), a.n)),
    IdentityId.I1: (("n",), lambda a: check_i1(a.n)),
    IdentityId.I2: (("n",), lambda a: check_i2(a.n)),
    IdentityId.I3: (("n",), lambda a: check_i3(a.n)),
    IdentityId.PROP1: (("lam", "n"), lambda a: check_prop1(a.lam, a.n)),
    IdentityId.PROP2: (("lam", "n"), lambda a: check_prop2(a.lam, a.n)),
    IdentityId.SIMILARITY_N10: (("lam",), lambda a: check_similarity(a.lam)),
    IdentityId.REMARK_TRIB: (("n",), lambda a: check_remark_trib(a.n)),
    IdentityId.REMARK_LAMBDA1: (("n",), lambda a: check_remark_lambda1(a.n)),
    IdentityId.D_SEQ_PROOF2: (("lam", "n"), lambda a: check_d_sequence(a.lam, a.n)),
    IdentityId.BINET_FUNDAMENTAL: (
        ("params", "n"),
        lambda a: fundamental_binet_check(RecurrenceParams(*a.params), a.n, a.precision),
    ),
}


def _spec(a) -> SequenceSpec:
    return SequenceSpec(*a.spec, RecurrenceParams(*a.params))


def cmd_verify(args, emit: Emitter) -> int:
    given = [k for k in ("spec", "params", "n", "m", "lam") if getattr(args, k) is not None]
    if args.all and (args.id or given):
        raise UsageError("--all cannot be combined with --id or explicit parameters")
    if args.id and given:
        ident = IdentityId(args.id)
        needed, fn = _SINGLE[ident]
        missing = [k for k in needed if getattr(args, k) is None]
        if missing:
            raise UsageError(f"{ident.value} needs " + ", ".join("--" + k.replace("lam", "lambda") for k in missing))
        reports = [fn(args)]
    else:
        ids = None
        if args.id:
            if IdentityId(args.id) not in EXACT_IDS:
                raise UsageError(f"{args.id} has no catalog sweep; pass its parameters explicitly")
            ids = [args.id]
        reports = run_catalog(args.seed, args.cases, ids)
    for rep in reports:
        emit.record(rep.to_record(), rep.to_plain())
    passed = sum(r.passed for r in reports)
    if emit.fmt == "plain":
        emit.out.write(f"{passed}/{len(reports)} passed\n")
    return EXIT_OK if passed == len(reports) else EXIT_FAIL


def cmd_roots(args, emit: Emitter) -> int:
    params = RecurrenceParams(*args.params)
    bits = args.precision
    delta = discriminant(params)
    if delta <= 0:
        print(f"delta = {delta} <= 0: only the one-real-root regime (delta > 0) is supported",
              file=sys.stderr)
        return EXIT_DOMAIN
    roots = solve_cubic(params, bits)
    res = roots.vieta_residuals(params)
    rec = {
        "delta": _frac(delta),
        "alpha": format_real(roots.alpha, bits),
        "omega1": format_complex(roots.omega1, bits),
        "omega2": format_complex(roots.omega2, bits),
        "vieta_sum": format_real(res[0], bits),
        "vieta_pairs": format_real(res[1], bits),
        "vieta_product": format_real(res[2], bits),
    }
    emit.record(rec, "\n".join(f"{k} = {v}" for k, v in rec.items()))
    return EXIT_OK


def cmd_bench(args, emit: Emitter) -> int:
    methods = args.methods
    for m in methods:
        if m not in ("iter", "matrix"):
            raise UsageError(f"unknown bench method {m!r}")
    for n in args.n:
        if n < 1:
            raise UsageError("bench n values must be >= 1")
        if "matrix" in methods and n > MATRIX_CAP:
            raise UsageError(f"matrix bench is capped at n <= {MATRIX_CAP}")
        if "iter" in methods and n > ITER_CAP:
            raise UsageError(f"iter bench is capped at n <= {ITER_CAP}")
    if emit.fmt == "plain":
        emit.fmt = "csv"
    for n in args.n:
        for m in methods:
            start = time.perf_counter()
            if m == "matrix":
                value, mults = term_matrix(TRIBONACCI_T, n, with_count=True)
            else:
                value, mults = term_iterative(TRIBONACCI_T, n), ""
            elapsed = time.perf_counter() - start
            emit.record({
                "method": m,
                "n": n,
                "wall_time": round(elapsed, 6),
                "result_bit_length": value.numerator.bit_length(),
                "multiplications": mults,
                "mult_bound": round(2 * math.log2(n), 3) if n > 1 else 0,
            })
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser(default_precision: int = 128) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=precision, default=default_precision,
                        help=f"mantissa bits for numeric work (env {PRECISION_ENV}, default 128)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("plain", "json-lines", "csv"), default="plain")

    parser = argparse.ArgumentParser(
        prog="horadam",
        description="Third-order Horadam, Tribonacci and geometric-mean sequence toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("term", parents=[common], help="compute H[n]")
    p.add_argument("--spec", type=rational_triple, required=True, metavar="A,B,C")
    p.add_argument("--params", type=rational_triple, required=True, metavar="R,S,T")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("iter", "matrix", "binet", "all"), default="iter")
    p.set_defaults(func=cmd_term)

    p = sub.add_parser("geomean", parents=[common], help="geometric-mean sequence")
    p.add_argument("--init", type=rational_triple, metavar="A,B,C")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("exponents", "value", "trace"), default="exponents")
    p.set_defaults(func=cmd_geomean)

    p = sub.add_parser("verify", parents=[common], help="check identities")
    p.add_argument("--all", action="store_true", help="sweep every catalog identity")
    p.add_argument("--id", choices=[i.value for i in IdentityId])
    p.add_argument("--cases", type=int, default=10)
    p.add_argument("--spec", type=rational_triple, metavar="A,B,C")
    p.add_argument("--params", type=rational_triple, metavar="R,S,T")
    p.add_argument("--lambda", dest="lam", type=rational)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("roots", parents=[common], help="roots of x^3 - r x^2 - s x - t")
    p.add_argument("--params", type=rational_triple, required=True, metavar="R,S,T")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("bench", parents=[common], help="time T[n] by iteration and matrix power")
    p.add_argument("--n", type=int_list, required=True, metavar="N1,N2,...")
    p.add_argument("--methods", type=lambda s: s.split(","), default=["iter", "matrix"])
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    try:
        parser = build_parser(_default_precision())
    except UsageError as exc:
        print(f"horadam: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "cases", 1) < 1:
        print("horadam: error: --cases must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    emit = Emitter(args.format)
    try:
        return args.func(args, emit)
    except UsageError as exc:
        print(f"horadam: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IndexError, TypeError) as exc:
        print(f"horadam: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, NoConvergence, PrecisionError) as exc:
        print(f"horadam: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
