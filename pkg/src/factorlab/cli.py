"""factorlab command-line interface.

Subcommands: factor, gen, experiment, bound-scan, lll-check.  All output is
plain text or JSONL on stdout; configuration is flags only.  Exit codes:
0 success, 2 exhausted/incomplete, 1 usage or domain error.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from . import fermat, harness, lattice, ntheory
from .harness import Balance, FactorCaps, Method, SemiprimeSpec, TrialRecord


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _parse_n(text: str) -> int:
    text = text.strip()
    if text.lower().startswith(("0x", "-0x")):
        return int(text, 16)
    return int(text, 10)


def _build_parser() -> _Parser:
    parser = _Parser(prog="factorlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_factor = sub.add_parser("factor", help="factor one integer")
    p_factor.add_argument("N", type=_parse_n, help="integer, decimal or 0x-hex")
    p_factor.add_argument(
        "--method",
        choices=("auto", "fermat", "shifted", "pipeline"),
        default="auto",
    )
    p_factor.add_argument("--x", type=int, default=0, help="shifted-center offset")
    p_factor.add_argument(
        "--cap", type=int, default=fermat.DEFAULT_STEP_CAP, help="square-test cap"
    )

    p_gen = sub.add_parser("gen", help="emit reproducible semiprimes as JSONL")
    p_gen.add_argument("--bits", type=int, required=True)
    p_gen.add_argument("--count", type=int, required=True)
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--unbalanced", action="store_true")

    p_exp = sub.add_parser("experiment", help="run pipeline trials, JSONL records")
    p_exp.add_argument("--bits", type=int, required=True)
    p_exp.add_argument("--count", type=int, required=True)
    p_exp.add_argument("--seed", type=int, required=True)
    p_exp.add_argument("--unbalanced", action="store_true")
    p_exp.add_argument("--out", required=True, help="output file for JSONL records")

    p_scan = sub.add_parser("bound-scan", help="bound-margin table as JSONL")
    p_scan.add_argument("--bits-min", type=int, required=True)
    p_scan.add_argument("--bits-max", type=int, required=True)
    p_scan.add_argument("--step", type=int, default=4)
    p_scan.add_argument("--trials", type=int, default=10)

    p_lll = sub.add_parser("lll-check", help="reduction invariant suite")
    p_lll.add_argument("--dim", type=int, required=True)
    p_lll.add_argument("--seed", type=int, required=True)
    p_lll.add_argument("--trials", type=int, required=True)
    p_lll.add_argument(
        "--entry-bits", type=int, default=40, help="max entry size, bits"
    )
    return parser


def _record_for_split(
    N: int, p: int, method: Method, steps: int, elapsed_ms: float
) -> TrialRecord:
    q = N // p
    return TrialRecord(
        N=N, p=min(p, q), q=max(p, q), B=0, x0=0, y0=0, method=method,
        steps=steps, margin_bits=0.0, success=True, elapsed_ms=elapsed_ms,
    )


def _cmd_factor(args) -> int:
    N = args.N
    if N < 2:
        print("N must be >= 2", file=sys.stderr)
        return 1
    t0 = time.perf_counter()
    if args.method == "fermat":
        if N % 2 == 0 or N < 3:
            print("fermat method needs odd N >= 3", file=sys.stderr)
            return 1
        try:
            rep = fermat.fermat_factor(N, args.cap)
        except fermat.Exhausted:
            print(f"exhausted after {args.cap} square tests")
            return 2
        ms = (time.perf_counter() - t0) * 1000.0
        print(f"{N} = {rep.p} * {rep.q}")
        print(_record_for_split(N, rep.p, Method.FERMAT, rep.steps, ms).to_json())
        return 0
    if args.method == "shifted":
        try:
            rep = fermat.shifted_fermat(N, args.x, args.cap)
        except fermat.Exhausted:
            print(f"exhausted after {args.cap} square tests")
            return 2
        except (ValueError, fermat.DegenerateDenominator) as exc:
            print(str(exc), file=sys.stderr)
            return 1
        ms = (time.perf_counter() - t0) * 1000.0
        print(f"{N} = {rep.p} * {rep.q}")
        print(
            _record_for_split(N, rep.p, Method.SHIFTED_FERMAT, rep.steps, ms).to_json()
        )
        return 0
    if args.method == "pipeline":
        if ntheory.is_prime(N):
            print(f"{N} is prime")
            return 0
        found = harness._pipeline_without_oracle(N, FactorCaps())
        ms = (time.perf_counter() - t0) * 1000.0
        if found is None:
            print("pipeline exhausted")
            return 2
        hit, method = found
        print(f"{N} = {hit} * {N // hit}")
        print(_record_for_split(N, hit, method, 0, ms).to_json())
        return 0
    # auto
    result = harness.factor_auto(N, FactorCaps(fermat_cap=args.cap))
    ms = (time.perf_counter() - t0) * 1000.0
    factors = " * ".join(str(f) for f in result.factors)
    if not result.complete:
        print(f"{N} = {factors} * [{result.cofactor}]  (incomplete)")
        return 2
    print(f"{N} = {factors}")
    small = result.factors[0] if result.factors else N
    method = Method.TRIAL_DIVISION if small <= 10_000 else Method.FERMAT
    print(_record_for_split(N, small, method, 0, ms).to_json())
    return 0


def _cmd_gen(args) -> int:
    balance = Balance.UNBALANCED if args.unbalanced else Balance.BALANCED
    for i in range(args.count):
        spec = SemiprimeSpec(bits=args.bits, balance=balance, seed=args.seed + i)
        N, p, q = harness.gen_semiprime(spec)
        print(f'{{"N": "{N}", "p": "{p}", "q": "{q}"}}')
    return 0


def _cmd_experiment(args) -> int:
    balance = Balance.UNBALANCED if args.unbalanced else Balance.BALANCED
    spec = SemiprimeSpec(bits=args.bits, balance=balance, seed=args.seed)
    records = harness.experiment_run(spec, args.count)
    with open(args.out, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(rec.to_json() + "\n")
    ok = sum(1 for r in records if r.success)
    print(f"wrote {len(records)} records to {args.out} ({ok} successes)")
    return 0 if ok == len(records) else 2


def _cmd_bound_scan(args) -> int:
    rows = harness.bound_scan(args.bits_min, args.bits_max, args.step, args.trials)
    for row in rows:
        print(row.to_json())
    return 0


def _cmd_lll_check(args) -> int:
    if args.dim < 2:
        print("--dim must be >= 2", file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    bound = 1 << args.entry_bits
    bad = 0
    for trial in range(args.trials):
        basis = [
            [rng.randrange(-bound, bound) for _ in range(args.dim)]
            for _ in range(args.dim)
        ]
        try:
            reduced = lattice.lll_reduce(basis)
        except lattice.DependentRows:
            continue
        problems = lattice.check_reduction(basis, reduced)
        status = "ok" if not problems else "FAIL " + "; ".join(problems)
        print(f'{{"trial": {trial}, "status": "{status}"}}')
        bad += bool(problems)
    return 0 if bad == 0 else 2


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "factor":
            return _cmd_factor(args)
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "experiment":
            return _cmd_experiment(args)
        if args.command == "bound-scan":
            return _cmd_bound_scan(args)
        if args.command == "lll-check":
            return _cmd_lll_check(args)
    except (ValueError, harness.GenerationExhausted) as exc:
        print(str(exc), file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
