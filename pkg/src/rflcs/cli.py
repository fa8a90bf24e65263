"""Command-line surface.

Exit codes: 0 success, 2 usage error, 3 capacity error, 4 check-suite
failure.  All stochastic commands require an explicit --seed; there is
no wall-clock seeding.  Outputs are single JSON documents or CSV tables,
always ending with a newline.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional, Sequence

from .bounds import (
    BoundParams,
    bernstein_tail,
    claim_inequality_gap,
    coupon_tail,
    expectation_lower_bound,
    lambda_empty,
    occupancy_tail,
    p1_bound,
    p2_bound_reduction,
    regime_target,
)
from .errors import CapacityError
from .experiments import (
    SweepConfig,
    run_regime_sweep,
    run_tailbound_suite,
    uniformity_test_exhaustive,
)
from .generators import gen_planted_pair, gen_uniform_pair
from .model import Instance
from .rng import RngStream
from .solvers import (
    K_MAX_EXACT,
    SegmentPlan,
    lcs_length,
    rflcs_bruteforce,
    rflcs_exact,
    segment_merge_heuristic,
)
from .urns import (
    GroupedUrnSpec,
    classical_urn_empty_counts,
    classical_urn_exact,
    grouped_urn_empty_counts,
    grouped_urn_exact,
    survival_from_samples,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_CHECK_FAILED = 4


def _emit(text: str, out_path: Optional[str]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_s_vec(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid group sizes {text!r}") from exc


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid integer list {text!r}") from exc


def _solve_result_json(res) -> str:
    return json.dumps(
        {
            "length": res.length,
            "method": res.method,
            "symbols": sorted(res.symbol_set),
            "edges": [[i, j] for i, j in res.witness.edges],
        }
    )


def cmd_gen(args) -> int:
    stream = RngStream(args.seed)
    if args.planted is not None:
        inst = gen_planted_pair(args.n, args.k, args.planted, stream)
    else:
        inst = gen_uniform_pair(args.n, args.k, stream)
    _emit(inst.to_json(), args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        inst = Instance.from_json(fh.read())
    if args.method == "lcs":
        res = lcs_length(inst.x, inst.y)
    elif args.method == "exact":
        res = rflcs_exact(inst, k_max_exact=args.k_max)
    elif args.method == "brute":
        res = rflcs_bruteforce(inst)
    else:
        size = args.segment_size or math.ceil(inst.k**0.75)
        res = segment_merge_heuristic(
            inst, SegmentPlan(n_tilde=size), per_segment=args.per_segment
        )
    _emit(_solve_result_json(res), args.out)
    return EXIT_OK


def _urn_spec_from_args(args) -> tuple[str, GroupedUrnSpec | None, int, int]:
    if args.s_vec is not None:
        spec = GroupedUrnSpec(k=args.k, s_vec=args.s_vec)
        return "grouped", spec, args.k, spec.s
    if args.s is None:
        raise ValueError("provide --s or --s-vec")
    return "classical", None, args.k, args.s


def cmd_urn(args) -> int:
    model, spec, k, s = _urn_spec_from_args(args)
    stream = RngStream(args.seed)
    if model == "grouped":
        samples = grouped_urn_empty_counts(spec, args.trials, stream)
        s_vec_label = ";".join(str(v) for v in spec.s_vec)
    else:
        samples = classical_urn_empty_counts(k, s, args.trials, stream)
        s_vec_label = str(s)
    surv = survival_from_samples(samples, k)
    lines = ["model,k,s_vec,t,survival,stderr"]
    for t, p in enumerate(surv):
        se = math.sqrt(p * (1 - p) / args.trials)
        lines.append(f"{model},{k},{s_vec_label},{t},{p:.10g},{se:.10g}")
    _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_urn_exact(args) -> int:
    model, spec, k, s = _urn_spec_from_args(args)
    if model == "grouped":
        probs = grouped_urn_exact(spec)
    else:
        probs = classical_urn_exact(k, s)
    _emit(json.dumps(probs), args.out)
    return EXIT_OK


def cmd_bounds(args) -> int:
    op = args.op
    if op == "lambda":
        result = {"op": op, "k": args.k, "s": args.s, "value": lambda_empty(args.k, args.s)}
    elif op == "bernstein":
        result = {
            "op": op,
            "k": args.k,
            "s": args.s,
            "a": args.a,
            "value": bernstein_tail(args.k, args.s, args.a),
        }
    elif op == "coupon":
        s, bound = coupon_tail(args.k, args.xi)
        result = {"op": op, "k": args.k, "xi": args.xi, "s": s, "value": bound}
    elif op == "occupancy":
        result = {
            "op": op,
            "k": args.k,
            "s": args.s,
            "a": args.a,
            "value": occupancy_tail(args.k, args.s, args.a),
        }
    elif op == "claim":
        result = {
            "op": op,
            "x": args.x,
            "rho": args.rho,
            "value": claim_inequality_gap(args.x, args.rho),
        }
    elif op == "elb":
        result = {
            "op": op,
            "x": args.x,
            "p_below": args.p_below,
            "value": expectation_lower_bound(args.x, args.p_below),
        }
    elif op == "regime":
        rt = regime_target(args.regime, args.k, rho=args.rho, xi=args.xi, n=args.n)
        result = {
            "op": op,
            "regime": rt.regime,
            "k": args.k,
            "n": rt.n,
            "target": rt.target,
            "tail_at_xi": rt.tail(args.xi),
        }
    elif op in ("p1", "p2"):
        params = BoundParams(
            k=args.k,
            n=args.n,
            n_tilde=args.n_tilde,
            b=args.b,
            delta=args.delta,
            t=args.t,
            a=args.a,
            r=args.r,
        )
        if op == "p1":
            result = {"op": op, "value": p1_bound(params)}
        else:
            q = p2_bound_reduction(params)
            result = {"op": op, "k": q.k, "s": q.s, "threshold": q.threshold}
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown op {op}")
    _emit(json.dumps(result), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = SweepConfig(
        regime=args.regime,
        k_list=args.k_list,
        trials=args.trials,
        master_seed=args.seed,
        rho=args.rho,
        xi=args.xi,
        estimator=args.estimator,
        n_override=args.n,
    )
    report = run_regime_sweep(config, workers=args.workers)
    _emit(report.to_csv(), args.out)
    return EXIT_OK


def cmd_uniformity(args) -> int:
    report = uniformity_test_exhaustive(args.n, args.k)
    doc = {
        "n": report.n,
        "k": report.k,
        "total_pairs": report.total_pairs,
        "uniform": report.uniform,
        "size_counts": {str(l): c for l, c in sorted(report.size_counts.items())},
        "subset_counts": {
            str(l): {",".join(map(str, sorted(sub))): c for sub, c in sorted(bucket.items())}
            for l, bucket in sorted(report.subset_counts.items())
        },
    }
    _emit(json.dumps(doc), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    report = run_tailbound_suite(RngStream(args.seed), trials=args.trials)
    lines = []
    for item in report.items:
        status = "PASS" if item.passed else "FAIL"
        lines.append(
            f"{status} {item.name}: observed={item.observed:.6g} "
            f"bound={item.bound:.6g} slack={item.slack:.6g}"
        )
    _emit("\n".join(lines), args.out)
    return EXIT_OK if report.all_passed else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rflcs",
        description="Repetition-free LCS of random sequences: generators, "
        "solvers, urn models, bounds, and Monte Carlo sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--planted", type=int, default=None, metavar="L")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="solve an instance from JSON")
    p.add_argument("--input", required=True)
    p.add_argument("--method", required=True, choices=["exact", "brute", "heuristic", "lcs"])
    p.add_argument("--segment-size", type=int, default=None, dest="segment_size")
    p.add_argument(
        "--per-segment", choices=["exact", "lis"], default="exact", dest="per_segment"
    )
    p.add_argument("--k-max", type=int, default=K_MAX_EXACT, dest="k_max")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("urn", help="Monte Carlo urn survival table (CSV)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--s-vec", type=_parse_s_vec, default=None, dest="s_vec")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_urn)

    p = sub.add_parser("urn-exact", help="exact empty-urn distribution (JSON)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--s-vec", type=_parse_s_vec, default=None, dest="s_vec")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_urn_exact)

    p = sub.add_parser("bounds", help="evaluate a closed-form bound (JSON)")
    p.add_argument(
        "--op",
        required=True,
        choices=["lambda", "bernstein", "coupon", "occupancy", "p1", "p2", "claim", "regime", "elb"],
    )
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--r", type=float, default=0.0)
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--rho", type=float, default=0.0)
    p.add_argument("--xi", type=float, default=0.0)
    p.add_argument("--p-below", type=float, default=0.0, dest="p_below")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n-tilde", type=int, default=1, dest="n_tilde")
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--regime", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sweep", help="regime sweep (CSV)")
    p.add_argument("--regime", type=int, required=True, choices=[1, 2, 3])
    p.add_argument("--k-list", type=_parse_int_list, required=True, dest="k_list")
    p.add_argument("--rho", type=float, default=0.0)
    p.add_argument("--xi", type=float, default=0.0)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument(
        "--estimator", choices=["exact", "heuristic", "bracket"], default="bracket"
    )
    p.add_argument("--n", type=int, default=None)
    p.add_argument(
        "--workers",
        type=int,
        default=int(os.environ.get("RFLCS_WORKERS", "1")),
    )
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("uniformity", help="exhaustive canonical symbol-set tally (JSON)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_uniformity)

    p = sub.add_parser("check", help="run the tail-bound verification battery")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
