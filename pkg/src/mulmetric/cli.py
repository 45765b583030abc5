"""Command-line interface: solve, verify, estimate, examples.

Exit codes: 0 success, 2 usage or validation failure, 3 solver
non-convergence, 4 verification refuted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fixed_point as fp
from . import registry as reg
from . import spaces
from .errors import MulMetricError
from .expressions import compile_expr
from .verifier import verify_axioms, verify_contraction

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NO_CONVERGENCE = 3
EXIT_REFUTED = 4


def _encode_value(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    try:
        return reg.encode_point(v)
    except Exception:
        return repr(v)


def trace_to_dict(report: fp.SolverReport) -> dict:
    return {
        "steps": [
            {
                "n": s.n,
                "point": reg.encode_point(s.point),
                "step_log": s.step_log,
                "apriori_log": s.apriori_log,
                "aposteriori_log": s.aposteriori_log,
            }
            for s in report.trace.steps
        ],
        "footer": {
            "fixed_point": reg.encode_point(report.fixed_point),
            "residual_log": report.residual_log,
            "iterations": report.iterations,
            "converged": report.converged,
        },
    }


def axiom_report_to_dict(report) -> dict:
    return {
        "m1_ok": report.m1_ok,
        "m2_ok": report.m2_ok,
        "m3_ok": report.m3_ok,
        "reverse_ok": report.reverse_ok,
        "witnesses": [
            {"axiom": w.axiom,
             "points": [_encode_value(p) for p in w.points],
             "values": list(w.values)}
            for w in report.witnesses
        ],
        "samples_used": report.samples_used,
        "seed": report.seed,
        "slack_log": report.slack_log,
        "sampled_not_proved": report.sampled_not_proved,
    }


def contraction_report_to_dict(report) -> dict:
    return {
        "kind": report.kind,
        "lambda": report.lam,
        "condition_ok": report.condition_ok,
        "witnesses": [
            {"kind": w.axiom,
             "points": [_encode_value(p) for p in w.points],
             "values": list(w.values)}
            for w in report.witnesses
        ],
        "samples_used": report.samples_used,
        "seed": report.seed,
        "slack_log": report.slack_log,
        "sampled_not_proved": report.sampled_not_proved,
    }


def _write_json(payload: dict, out: str | None):
    text = json.dumps(payload, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_problem(args) -> reg.ProblemDefinition:
    if args.problem:
        if args.problem in reg.REGISTRY:
            return reg.REGISTRY[args.problem].problem
        with open(args.problem) as fh:
            return reg.parse_problem(fh.read())
    kwargs = dict(
        space_id=args.space or "pos-reals",
        map_id=args.map,
        expr=args.expr,
        kind=args.kind or "banach",
        lam=args.lam if args.lam is not None else 0.5,
        seed=args.seed,
    )
    if args.x0 is not None:
        kwargs["x0"] = tuple(float(c) for c in args.x0.split(","))
    if args.tol_log is not None:
        kwargs["tol_log"] = args.tol_log
    if args.max_iter is not None:
        kwargs["max_iter"] = args.max_iter
    for name in ("dim", "base", "lo", "hi"):
        value = getattr(args, name)
        if value is not None:
            kwargs[name] = value
    return reg.ProblemDefinition(**kwargs)


def cmd_solve(args) -> int:
    pd = _load_problem(args)
    space = reg.build_space(pd)
    map_ = reg.build_selfmap(pd, space)
    x0 = reg.decode_point(pd, pd.x0)
    spec = fp.ContractionSpec(pd.kind, pd.lam)
    report = fp.solve(map_, x0, spec, pd.tol_log, pd.max_iter)
    _write_json(trace_to_dict(report), args.out)
    if not report.converged:
        print(f"no convergence after {report.iterations} iterations "
              f"(residual_log = {report.residual_log:.3e})", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def _verify_space(args) -> int:
    if args.space == "d-star":
        sp = spaces.positive_vectors(args.dim or 1)
    elif args.space == "d-a":
        sp = spaces.exp_metric(args.dim or 1, args.base or 2.0,
                               complex_coords=args.complex)
    elif args.space == "segment":
        sp = spaces.segment_space()
    elif args.space == "func-sup":
        sp = spaces.function_space(args.lo if args.lo is not None else 0.0,
                                   args.hi if args.hi is not None else 1.0)
    elif args.space == "product-pos":
        inner = spaces.positive_reals()
        sp = spaces.product_space(inner, inner)
    elif args.space == "pos-reals":
        sp = spaces.positive_reals()
    else:
        raise MulMetricError(f"unknown space {args.space!r}")
    report = verify_axioms(sp.dist, sp.sample, args.samples, args.seed,
                           points_equal=sp.points_equal)
    _write_json(axiom_report_to_dict(report), args.out)
    return EXIT_OK if report.all_ok else EXIT_REFUTED


def _verify_expr_dist(args) -> int:
    dist = compile_expr(args.expr_dist, ("x", "y"))
    lo = args.lo if args.lo is not None else -5.0
    hi = args.hi if args.hi is not None else 5.0
    report = verify_axioms(dist, lambda rng: rng.uniform(lo, hi),
                           args.samples, args.seed)
    _write_json(axiom_report_to_dict(report), args.out)
    return EXIT_OK if report.all_ok else EXIT_REFUTED


def _verify_contraction(args) -> int:
    pd = _load_problem(args)
    space = reg.build_space(pd)
    map_ = reg.build_selfmap(pd, space)
    lam = args.lam if args.lam is not None else pd.lam
    kind = args.kind or pd.kind
    report = verify_contraction(map_, space.dist, kind, lam,
                                space.sample, args.samples, args.seed)
    _write_json(contraction_report_to_dict(report), args.out)
    return EXIT_OK if report.condition_ok else EXIT_REFUTED


def cmd_verify(args) -> int:
    if args.expr_dist:
        return _verify_expr_dist(args)
    if args.problem or args.map or args.expr:
        return _verify_contraction(args)
    if args.space:
        return _verify_space(args)
    raise MulMetricError("nothing to verify: give --space, --expr-dist, "
                         "--problem, --map, or --expr")


def cmd_estimate(args) -> int:
    pd = _load_problem(args)
    space = reg.build_space(pd)
    map_ = reg.build_selfmap(pd, space)
    kind = args.kind or pd.kind
    lambda_hat, witness = fp.estimate_lambda(map_, args.pairs, kind, args.seed)
    print(f"{lambda_hat!r}")
    if args.verbose:
        print(f"witness pair: {witness}", file=sys.stderr)
    return EXIT_OK


def cmd_examples(_args) -> int:
    for name, entry in reg.REGISTRY.items():
        pd = entry.problem
        print(f"{name}: space={pd.space_id} kind={pd.kind} lambda={pd.lam} "
              f"expected={entry.expected}")
        print(f"    {entry.source}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mulmetric",
        description="Multiplicative metric spaces: solvers, verification, diagnostics")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--problem", help="registry id or problem file path")
        p.add_argument("--map", help="named map from the registry")
        p.add_argument("--expr", help="closed-form scalar map f(x)")
        p.add_argument("--space", help="space id (pos-reals, pos-interval, d-star, "
                                       "d-a, real-line-exp, segment, func-sup, product-pos)")
        p.add_argument("--dim", type=int)
        p.add_argument("--base", type=float)
        p.add_argument("--lo", type=float)
        p.add_argument("--hi", type=float)
        p.add_argument("--kind", choices=("banach", "kannan", "chatterjea"))
        p.add_argument("--lambda", dest="lam", type=float)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="output file (default: stdout)")

    p_solve = sub.add_parser("solve", help="run a fixed-point solve, export the trace")
    add_common(p_solve)
    p_solve.add_argument("--x0", help="start point, comma-separated coordinates")
    p_solve.add_argument("--tol-log", dest="tol_log", type=float)
    p_solve.add_argument("--max-iter", dest="max_iter", type=int)
    p_solve.set_defaults(func=cmd_solve, x0=None, tol_log=None, max_iter=None)

    p_verify = sub.add_parser("verify", help="check metric axioms or a contraction condition")
    add_common(p_verify)
    p_verify.add_argument("--expr-dist", dest="expr_dist",
                          help="closed-form candidate distance d(x, y)")
    p_verify.add_argument("--complex", action="store_true",
                          help="complex coordinates for d-a")
    p_verify.add_argument("--samples", type=int, default=10000)
    p_verify.set_defaults(func=cmd_verify, x0=None, tol_log=None, max_iter=None)

    p_est = sub.add_parser("estimate", help="estimate the contraction constant")
    add_common(p_est)
    p_est.add_argument("--pairs", type=int, default=1000)
    p_est.add_argument("--verbose", action="store_true")
    p_est.set_defaults(func=cmd_estimate, x0=None, tol_log=None, max_iter=None)

    p_ex = sub.add_parser("examples", help="list built-in problems")
    p_ex.set_defaults(func=cmd_examples)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MulMetricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
