"""Command line front end.

Subcommands: coeff (one exact coefficient), series (constant term series as
JSON), findop (recurrence/operator search over a series file), bench (engine
vs dense oracle table), oracle (dense reference computation), selftest.

Exit codes: 0 success (including "no operator found"), 2 usage error,
3 input error, 4 resource guard refusal.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .fixtures import SAMPLE_NAMES, sample_polynomial
from .laurent import LaurentError, parse_laurent, to_expr_string, total_weight
from .oracle import SizeGuardError, known_family, naive_power_coeff
from .recurrence import (FitError, constant_term_series, exact_coefficient,
                         recurrence_to_operator, search_recurrence,
                         series_from_json, series_to_json)


@dataclass
class RunConfig:
    threads: int = 0
    prime_bits: int = 31
    extra_equations: int = 5
    out: str | None = None
    fmt: str | None = None

    def __post_init__(self):
        if self.threads < 0:
            raise ValueError("threads must be >= 0")
        if not 20 <= self.prime_bits <= 31:
            raise ValueError("prime_bits must be in [20, 31]")


def _config(args) -> RunConfig:
    return RunConfig(threads=args.threads, prime_bits=args.prime_bits,
                     extra_equations=getattr(args, "extra", 5),
                     out=getattr(args, "out", None),
                     fmt=getattr(args, "format", None))


def _load_polynomial(args, cfg: RunConfig):
    if getattr(args, "fixture", None):
        return sample_polynomial(args.fixture)
    text = Path(args.poly).read_text()
    fmt = cfg.fmt or ("json" if text.lstrip().startswith("{") else "expr")
    return parse_laurent(text, fmt)


def _parse_index(text: str):
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise LaurentError(f"bad index {text!r}; expected i1,i2,...")


def _emit(text: str, cfg: RunConfig):
    if cfg.out:
        Path(cfg.out).write_text(text + "\n")
    else:
        print(text)


def _progress(label):
    def report(done, total):
        print(f"\r{label}: {done}/{total}", end="", file=sys.stderr, flush=True)
        if done == total:
            print(file=sys.stderr)
    return report


# --- subcommands --------------------------------------------------------------

def cmd_coeff(args) -> int:
    cfg = _config(args)
    h = _load_polynomial(args, cfg)
    index = _parse_index(args.index) if args.index else None
    value = exact_coefficient(h, args.power, index, threads=cfg.threads,
                              prime_bits=cfg.prime_bits)
    _emit(str(value), cfg)
    return 0


def cmd_series(args) -> int:
    cfg = _config(args)
    h = _load_polynomial(args, cfg)
    s = constant_term_series(h, args.count, threads=cfg.threads,
                             prime_bits=cfg.prime_bits,
                             progress=_progress("series"))
    _emit(json.dumps(series_to_json(s), indent=2, sort_keys=True), cfg)
    return 0


def cmd_findop(args) -> int:
    cfg = _config(args)
    s = series_from_json(json.loads(Path(args.series).read_text()))
    hits = search_recurrence(s, args.max_length, args.max_degree,
                             extra=cfg.extra_equations)
    if not hits:
        _emit("no operator found", cfg)
        return 0
    blocks = [recurrence_to_operator(rec).to_text() for rec in hits]
    _emit("\n\n".join(blocks), cfg)
    return 0


def cmd_bench(args) -> int:
    cfg = _config(args)
    h = _load_polynomial(args, cfg)
    powers = sorted({int(p) for p in args.power.split(",")})
    lines = [f"polynomial: {to_expr_string(h)}",
             f"terms: {len(h.terms)}  weight: {total_weight(h)}",
             ""]
    for p in powers:
        t0 = time.perf_counter()
        value = exact_coefficient(h, p, threads=cfg.threads,
                                  prime_bits=cfg.prime_bits)
        dt_engine = time.perf_counter() - t0
        t0 = time.perf_counter()
        try:
            ref = naive_power_coeff(h, p)
            dt_oracle = time.perf_counter() - t0
            agree = "yes" if ref == value else "NO"
            oracle_col = f"oracle={ref} time={dt_oracle:.3f}s agree={agree}"
        except SizeGuardError as exc:
            oracle_col = f"oracle=refused ({exc})"
        lines.append(f"p={p} engine={value} time={dt_engine:.3f}s {oracle_col}")
    _emit("\n".join(lines), cfg)
    return 0


def cmd_oracle(args) -> int:
    cfg = _config(args)
    h = _load_polynomial(args, cfg)
    index = _parse_index(args.index) if args.index else None
    value = naive_power_coeff(h, args.power, index)
    _emit(str(value), cfg)
    return 0


def cmd_selftest(args) -> int:
    cfg = _config(args)
    failures = 0

    def check(label, got, want):
        nonlocal failures
        ok = got == want
        failures += 0 if ok else 1
        print(f"{'ok' if ok else 'FAIL'}: {label} (got {got}, want {want})")

    x_plus_inv = parse_laurent("X + X^-1")
    check("(X + 1/X)^6 constant term", exact_coefficient(x_plus_inv, 6), 20)
    check("(X + 1/X)^7 constant term", exact_coefficient(x_plus_inv, 7), 0)
    dwork = sample_polynomial("dwork4")
    for p in (5, 10):
        check(f"dwork4 a_{p}", exact_coefficient(dwork, p),
              known_family("dwork4", p))
    rng = random.Random(20260814)
    agree = 0
    for _ in range(8):
        n = rng.randint(1, 3)
        terms = [(rng.randint(-3, 3), tuple(rng.randint(-2, 2) for _ in range(n)))
                 for _ in range(rng.randint(2, 5))]
        poly = parse_laurent(json.dumps(
            {"variables": [f"X{i+1}" for i in range(n)],
             "terms": [{"c": str(c), "e": list(e)} for c, e in terms]}),
            "json")
        p = rng.randint(0, 4)
        index = tuple(rng.randint(-1, 1) for _ in range(n))
        if exact_coefficient(poly, p, index) == naive_power_coeff(poly, p, index):
            agree += 1
    check("random engine/oracle agreement", agree, 8)
    print("selftest:", "ok" if failures == 0 else f"{failures} failure(s)")
    return 0 if failures == 0 else 1


# --- parser -------------------------------------------------------------------

def _add_common(sub, poly_input=True):
    if poly_input:
        group = sub.add_mutually_exclusive_group(required=True)
        group.add_argument("--poly", metavar="FILE",
                           help="polynomial file (expression or JSON)")
        group.add_argument("--fixture", choices=SAMPLE_NAMES,
                           help="built-in sample polynomial")
    sub.add_argument("--threads", type=int, default=0,
                     help="worker processes, 0 = all cores (default)")
    sub.add_argument("--prime-bits", type=int, default=31, dest="prime_bits",
                     help="bit size of the working primes (20..31)")
    sub.add_argument("--out", metavar="FILE", help="write output here")
    sub.add_argument("--format", choices=("expr", "json"),
                     help="input polynomial format (default: sniff)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctpow",
        description="Exact coefficients of powers of Laurent polynomials, "
                    "constant term series, and recurrence discovery.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("coeff", help="one exact coefficient of h^p")
    _add_common(p)
    p.add_argument("--power", type=int, required=True, metavar="P")
    p.add_argument("--index", metavar="i1,i2,...",
                   help="target exponent vector (default: constant term)")
    p.set_defaults(func=cmd_coeff)

    p = subs.add_parser("series", help="constant term series as JSON")
    _add_common(p)
    p.add_argument("--count", type=int, required=True, metavar="N",
                   help="compute a_0 .. a_N")
    p.set_defaults(func=cmd_series)

    p = subs.add_parser("findop", help="search recurrences over a series file")
    p.add_argument("series", metavar="SERIES.json")
    p.add_argument("--max-length", type=int, default=8, dest="max_length",
                   help="largest recurrence length k to try")
    p.add_argument("--max-degree", type=int, default=4, dest="max_degree",
                   help="largest coefficient degree d to try")
    p.add_argument("--extra", type=int, default=5,
                   help="withheld extra equations for the stability check")
    _add_common(p, poly_input=False)
    p.set_defaults(func=cmd_findop)

    p = subs.add_parser("bench", help="engine vs dense oracle timing table")
    _add_common(p)
    p.add_argument("--power", required=True, metavar="P1,P2,...",
                   help="comma separated list of powers")
    p.set_defaults(func=cmd_bench)

    p = subs.add_parser("oracle", help="dense reference computation")
    _add_common(p)
    p.add_argument("--power", type=int, required=True, metavar="P")
    p.add_argument("--index", metavar="i1,i2,...")
    p.set_defaults(func=cmd_oracle)

    p = subs.add_parser("selftest", help="quick built-in consistency battery")
    _add_common(p, poly_input=False)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SizeGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 4
    except (LaurentError, FitError, KeyError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
