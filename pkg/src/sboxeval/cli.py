"""Command-line frontend: evaluate, dump, benchmark, generate, verify.

Results go to stdout; everything else goes to stderr so output can be piped.
Exit codes are stable: 0 success, 1 usage, 2 parse, 3 memory budget,
4 size guard, 5 verification failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

import numpy as np

from . import bench
from .memory import MemoryBudgetError, default_budget
from .nonlinearity import (
    METHODS,
    SizeCapError,
    evaluate,
    nonlinearity_bruteforce,
    nonlinearity_from_maxima,
    nonlinearity_from_spectrum,
)
from .parallel import default_workers, fwht_parallel
from .sbox import SBox, SBoxFormatError, generate_sbox, parse_sbox, render_sbox
from .walsh import fwht_fused, fwht_rowmajor, fwht_transposed, walsh_direct, write_spectrum

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_MEMORY = 3
EXIT_SIZE = 4
EXIT_VERIFY = 5

WSPEC_MAX_BITS = 10  # text dumps beyond 10x10 are multi-GiB
VERIFY_MAX_BITS = 8  # the direct oracle sweep is O(2^{2n+m})

MAX_MEM_ENV = "SBOX_EVAL_MAX_MEM"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _load_sbox(path: str) -> SBox:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_sbox(fh.read())


def _resolve_budget(args) -> int | None:
    if getattr(args, "max_mem", None) is not None:
        return args.max_mem
    env = os.environ.get(MAX_MEM_ENV)
    if env is not None:
        return int(env)
    return default_budget()


def _open_out(path: str | None):
    if path is None:
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def cmd_nl(args) -> int:
    s = _load_sbox(args.path)
    result = evaluate(
        s,
        method=args.method,
        workers=args.workers,
        mode=args.mode,
        max_bytes=_resolve_budget(args),
    )
    print(f"nl = {result.value} (argmin v = {result.argmin_v})")
    return EXIT_OK


def cmd_walsh(args) -> int:
    s = _load_sbox(args.path)
    if s.n > WSPEC_MAX_BITS or s.m > WSPEC_MAX_BITS:
        print(
            f"refusing to dump a {s.n}x{s.m} spectrum as text "
            f"(limit {WSPEC_MAX_BITS}x{WSPEC_MAX_BITS})",
            file=sys.stderr,
        )
        return EXIT_SIZE
    budget = _resolve_budget(args)
    if args.method == "rowmajor":
        spectrum = fwht_rowmajor(s, budget)
    elif args.method == "fused":
        spectrum, _ = fwht_fused(s, mode="retain", max_bytes=budget)
    else:
        spectrum = fwht_transposed(s, budget)
    out, close = _open_out(args.out)
    try:
        write_spectrum(spectrum, out)
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_bench(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            print(f"error: unknown method {m!r}; choose from {METHODS}",
                  file=sys.stderr)
            return EXIT_USAGE
    try:
        workers = [int(w) for w in args.workers.split(",")]
    except ValueError:
        print(f"error: --workers must be comma-separated integers, got "
              f"{args.workers!r}", file=sys.stderr)
        return EXIT_USAGE
    s = _load_sbox(args.path)
    records = bench.run_benchmark(
        s,
        methods,
        worker_counts=workers,
        repetitions=args.reps,
        mode=args.mode,
        max_bytes=_resolve_budget(args),
    )
    out, close = _open_out(args.out)
    try:
        bench.write_csv(records, out)
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_gen(args) -> int:
    s = generate_sbox(args.n, args.m, args.seed, args.bijective)
    out, close = _open_out(args.out)
    try:
        out.write(render_sbox(s))
    finally:
        if close:
            out.close()
    return EXIT_OK


def _check(name: str, ok: bool, failures: list[str]) -> None:
    print(f"{'PASS' if ok else 'FAIL'} {name}")
    if not ok:
        failures.append(name)


def cmd_verify(args) -> int:
    s = _load_sbox(args.path)
    if s.n > VERIFY_MAX_BITS or s.m > VERIFY_MAX_BITS:
        print(
            f"verify needs n, m <= {VERIFY_MAX_BITS} (oracle cost); "
            f"got {s.n}x{s.m}",
            file=sys.stderr,
        )
        return EXIT_SIZE
    budget = _resolve_budget(args)
    max_workers = args.max_workers or default_workers()

    spectrum, maxima = fwht_fused(s, mode="retain", max_bytes=budget)
    if args.inject_corruption:
        rows = spectrum.rows.copy()
        rows[0, 0] += 2  # negative control: break one spectrum element
        spectrum = type(spectrum)(spectrum.n, spectrum.m, rows)

    failures: list[str] = []

    row_ok = np.array_equal(fwht_rowmajor(s, budget).rows, spectrum.rows)
    tr_ok = np.array_equal(fwht_transposed(s, budget).rows, spectrum.rows)
    oracle_ok = row_ok and tr_ok
    if oracle_ok:
        for v in range(1, 1 << s.m):
            row = spectrum.rows[v - 1]
            if any(int(row[u]) != walsh_direct(s, u, v) for u in range(1 << s.n)):
                oracle_ok = False
                break
    _check("direct-oracle equivalence", oracle_ok, failures)

    sums = np.sum(spectrum.rows.astype(np.int64) ** 2, axis=1)
    _check("parseval", bool(np.all(sums == 1 << (2 * s.n))), failures)

    scan = nonlinearity_from_spectrum(spectrum)
    reduced = nonlinearity_from_maxima(maxima)
    brute = nonlinearity_bruteforce(s)
    _check(
        "triple nonlinearity agreement",
        scan.value == reduced.value == brute.value,
        failures,
    )
    print(f"nl = {reduced.value}", file=sys.stderr)

    det_ok = True
    ref_spec, ref_cm = fwht_parallel(s, workers=1, max_bytes=budget)
    for workers in range(2, max_workers + 1):
        spec_w, cm_w = fwht_parallel(s, workers=workers, max_bytes=budget)
        if not (
            np.array_equal(spec_w.rows, ref_spec.rows)
            and np.array_equal(cm_w.values, ref_cm.values)
        ):
            det_ok = False
            break
    _check(f"thread determinism (1..{max_workers} workers)", det_ok, failures)

    if failures:
        print(f"{len(failures)} check(s) failed", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="sbox-eval", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, modes=True):
        p.add_argument("--max-mem", type=int, default=None, metavar="BYTES",
                       help=f"spectrum memory budget (default: env {MAX_MEM_ENV} "
                            "or 75%% of physical RAM)")
        if modes:
            p.add_argument("--mode", choices=("retain", "stream"), default="retain",
                           help="keep the whole spectrum, or stream one column "
                                "per worker (default: retain)")

    p_nl = sub.add_parser("nl", help="compute the nonlinearity of an S-box")
    p_nl.add_argument("path", help=".sbox file")
    p_nl.add_argument("--method", choices=METHODS, default="parallel")
    p_nl.add_argument("--workers", type=_positive_int, default=None,
                      help="worker count for --method parallel (default: all cores)")
    add_common(p_nl)
    p_nl.set_defaults(func=cmd_nl)

    p_walsh = sub.add_parser("walsh", help="dump the Walsh spectrum as text")
    p_walsh.add_argument("path", help=".sbox file")
    p_walsh.add_argument("--method", choices=("rowmajor", "transposed", "fused"),
                         default="transposed")
    p_walsh.add_argument("--out", default=None, help=".wspec output (default: stdout)")
    add_common(p_walsh, modes=False)
    p_walsh.set_defaults(func=cmd_walsh)

    p_bench = sub.add_parser("bench", help="time the transform variants")
    p_bench.add_argument("path", help=".sbox file")
    p_bench.add_argument("--methods", default="rowmajor,transposed,fused,parallel",
                         help="comma-separated method list")
    p_bench.add_argument("--workers", default="1",
                         help="comma-separated worker counts for parallel runs")
    p_bench.add_argument("--reps", type=_positive_int, default=5)
    p_bench.add_argument("--out", default=None, help="CSV output (default: stdout)")
    add_common(p_bench)
    p_bench.set_defaults(func=cmd_bench)

    p_gen = sub.add_parser("gen", help="generate a random S-box")
    p_gen.add_argument("n", type=int)
    p_gen.add_argument("m", type=int)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--bijective", action="store_true")
    p_gen.add_argument("--out", default=None, help=".sbox output (default: stdout)")
    p_gen.set_defaults(func=cmd_gen)

    p_verify = sub.add_parser("verify", help="run the oracle and invariant checks")
    p_verify.add_argument("path", help=".sbox file")
    p_verify.add_argument("--max-workers", type=_positive_int, default=None,
                          help="upper end of the determinism sweep")
    p_verify.add_argument("--inject-corruption", action="store_true",
                          help=argparse.SUPPRESS)
    add_common(p_verify, modes=False)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SBoxFormatError, OSError, ValueError) as exc:
        if isinstance(exc, SizeCapError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_SIZE
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MemoryBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("hint: --mode stream avoids retaining the full spectrum",
              file=sys.stderr)
        return EXIT_MEMORY


if __name__ == "__main__":
    sys.exit(main())
