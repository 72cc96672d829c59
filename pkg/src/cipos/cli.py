"""Command-line front end: every computation as a subcommand, text or JSON out.

Exit codes: 0 on success, 1 on an internal invariant failure (or a failing
selftest), 2 on argument or validation errors.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys

from . import bounds, chow, jets, schur, selftest, vecfields
from .chow import ModelParams


def _parent() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", metavar="PATH", help="write output to a file instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cipos",
        description="Exact positivity certificates for complete intersections in projective space.",
    )
    common = _parent()
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("segre", parents=[common], help="Segre classes of the twisted cotangent bundle")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--twist", type=int, default=0)

    p = sub.add_parser("positivity", parents=[common], help="Schur-determinant positivity report")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)

    p = sub.add_parser("bound", parents=[common], help="effective degree threshold")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--method", choices=("rough", "dim2", "scan"), default="rough")
    p.add_argument("--d-max", type=int, default=None, help="scan ceiling (scan method only)")

    p = sub.add_parser("jet", parents=[common], help="Morse bigness certificate on the jet tower")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--degrees", type=str, default=None, help="comma-separated degree vector")

    p = sub.add_parser("vecfields", parents=[common], help="tangent vector fields on the universal chart")
    vsub = p.add_subparsers(dest="action", required=True)
    v = vsub.add_parser("verify", parents=[common])
    v.add_argument("--N", type=int, required=True)
    v.add_argument("--degrees", type=str, required=True, help="comma-separated hypersurface degrees")
    v.add_argument("--family", choices=("solved", "tj", "talpha", "tlambda"), required=True)
    v.add_argument("--samples", type=int, default=100)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    p.add_argument("--criteria", type=str, default=None, help="comma-separated criterion numbers")

    return parser


def _emit(args, payload: dict, text: str) -> None:
    content = json.dumps(payload, indent=2) if args.format == "json" else text
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(content + "\n")
    else:
        print(content)


def _params_or_exit(N: int, n: int) -> ModelParams:
    try:
        return ModelParams(N, n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _cmd_segre(args) -> int:
    params = _params_or_exit(args.N, args.n)
    payload = chow.segre_table_json(params, args.twist)
    lines = [f"Segre classes, N={params.N} n={params.n} c={params.c} twist={args.twist}"]
    seg = chow.segre_cotangent(params, args.twist)
    for j in range(params.n + 1):
        lines.append(f"  s_{j} = ({seg[j].coeffs[j].text()}) * h^{j}")
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_positivity(args) -> int:
    params = _params_or_exit(args.N, args.n)
    try:
        report = schur.positivity_report(params, args.a)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    lines = [f"Numerical positivity, N={params.N} n={params.n} c={params.c} a={args.a}"]
    lines.append(f"{'partition':<12} {'threshold':>10}  dominant part")
    for record in report.records:
        lines.append(
            f"{str(tuple(record.partition)):<12} {str(record.threshold):>10}  {record.dominant.text()}"
        )
    lines.append(f"sufficient uniform degree D = {report.threshold}")
    _emit(args, report.to_json(), "\n".join(lines))
    return 0


def _cmd_bound(args) -> int:
    params = _params_or_exit(args.N, args.n)
    N, n, a = args.N, args.n, args.a
    if n > params.c:
        print(f"error: bound requires n <= c, got n={n}, c={params.c}", file=sys.stderr)
        return 2
    coefficients = [bounds.morse_coeff(N, n, a, j) for j in range(n + 1)]
    try:
        if args.method == "dim2":
            if n != 2:
                print("error: dim2 method requires n = 2", file=sys.stderr)
                return 2
            gamma = bounds.surface_degree_bound(N, a)
        elif args.method == "rough":
            gamma = bounds.rough_degree_bound(N, n, a)
        else:
            ceiling = args.d_max
            if ceiling is None:
                analytic = (
                    bounds.surface_degree_bound(N, a)
                    if n == 2 and N >= 4
                    else bounds.rough_degree_bound(N, n, a)
                )
                ceiling = math.ceil(analytic) + 1
            gamma = jets.min_uniform_degree(params, a, ceiling)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = bounds.BoundReport(N=N, n=n, a=a, coefficients=coefficients, gamma=gamma, method=args.method)
    if gamma is None:
        threshold_line = "threshold = none"
    else:
        threshold_line = f"threshold = {gamma} (integer degrees >= {report.gamma_ceil})"
    text = [
        f"Degree bound, N={N} n={n} a={a} method={args.method}",
        "difference coefficients (elementary symmetric basis, ascending): "
        + ", ".join(str(v) for v in coefficients),
        threshold_line,
    ]
    _emit(args, report.to_json(), "\n".join(text))
    return 0


def _cmd_jet(args) -> int:
    params = _params_or_exit(args.N, args.n)
    degrees = None
    if args.degrees:
        try:
            degrees = tuple(int(part) for part in args.degrees.split(","))
        except ValueError:
            print("error: --degrees must be a comma-separated integer list", file=sys.stderr)
            return 2
        if len(degrees) != params.c:
            print(f"error: need {params.c} degrees, got {len(degrees)}", file=sys.stderr)
            return 2
    if args.a < 0:
        print("error: twist a must be >= 0", file=sys.stderr)
        return 2
    cert = jets.morse_certificate(params, args.a, degrees)
    lines = [
        f"Morse certificate, N={params.N} n={params.n} c={params.c} kappa={params.kappa} a={args.a}",
        f"difference = {cert.difference.text()}",
    ]
    if degrees is not None:
        verdict = "positive (big twist certified)" if cert.positive else "not positive"
        lines.append(f"value at {degrees} = {cert.value} -> {verdict}")
    _emit(args, cert.to_json(), "\n".join(lines))
    return 0


def _cmd_vecfields(args) -> int:
    try:
        degrees = [int(part) for part in args.degrees.split(",")]
        chart = vecfields.UniversalChart(args.N, degrees)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rng = random.Random(args.seed)
    eqs, deqs = vecfields.defining_equations(chart)
    fields = []
    if args.family == "tj":
        fields = [vecfields.coordinate_field(chart, j) for j in range(1, chart.N + 1)]
    elif args.family == "solved":
        e1 = tuple(1 if t == 0 else 0 for t in range(chart.N))
        for i in range(1, chart.c + 1):
            cutoff = min(chart.N, chart.degrees[i - 1])
            frees = [
                alpha
                for alpha in chart.alphas[i - 1]
                if sum(alpha) <= cutoff and alpha not in ((0,) * chart.N, e1)
            ]
            data = {alpha: rng.randint(-5, 5) for alpha in frees}
            fields.append(vecfields.solved_coefficient_field(chart, i, data))
    elif args.family == "talpha":
        for i in range(1, chart.c + 1):
            candidates = [a for a in chart.alphas[i - 1] if sum(a) >= 1]
            alpha = rng.choice(candidates)
            budget = rng.randint(0, min(chart.N, sum(alpha)))
            ell = [0] * chart.N
            for _ in range(budget):
                j = rng.choice([t for t in range(chart.N) if ell[t] < alpha[t]])
                ell[j] += 1
            for convention in ("single", "spread"):
                fields.append(
                    vecfields.coefficient_shift_field(chart, i, alpha, tuple(ell), convention)
                )
    else:
        matrix = [[rng.randint(-3, 3) for _ in range(chart.N)] for _ in range(chart.N)]
        for j in range(chart.N):
            matrix[j][j] += 7  # diagonally dominant, hence invertible
        fields.append(vecfields.velocity_field(chart, matrix))

    identical: bool | None = None
    if args.family in ("tj", "solved"):
        identical = all(
            vecfields.lie_derivative(field, g).is_zero()
            for field in fields
            for g in eqs + deqs
        )
    residuals: list[str] = []
    for index, field in enumerate(fields):
        report = vecfields.point_tangency_check(field, samples=args.samples, seed=args.seed + index)
        residuals.extend(f"field {index}: {entry}" for entry in report.nonzero_residuals)
    payload = {
        "family": args.family,
        "identical_vanishing": identical,
        "residuals": residuals[:50],
        "residual_count": len(residuals),
        "pole_orders": {
            "z": max((f.z_pole_order for f in fields), default=0),
            "a": max((f.a_pole_order for f in fields), default=0),
        },
        "samples": args.samples,
        "seed": args.seed,
    }
    text = [
        f"Vector fields, family={args.family} N={chart.N} degrees={list(chart.degrees)} seed={args.seed}",
        f"identical vanishing: {'n/a' if identical is None else identical}",
        f"nonzero residuals over {args.samples} samples per field: {len(residuals)}",
        f"pole orders: z <= {payload['pole_orders']['z']}, a <= {payload['pole_orders']['a']}",
    ]
    _emit(args, payload, "\n".join(text))
    if identical is False:
        return 1
    return 0


def _cmd_selftest(args) -> int:
    numbers = None
    if args.criteria:
        try:
            numbers = [int(part) for part in args.criteria.split(",")]
        except ValueError:
            print("error: --criteria must be a comma-separated integer list", file=sys.stderr)
            return 2
    results = selftest.run_all(numbers)
    payload = {
        "results": [
            {
                "criterion": r.number,
                "name": r.name,
                "passed": r.passed,
                "detail": r.detail,
                "seconds": round(r.seconds, 3),
                "limit": r.limit,
            }
            for r in results
        ],
        "all_passed": all(r.passed for r in results),
    }
    text = "\n".join(r.line() for r in results)
    _emit(args, payload, text)
    return 0 if payload["all_passed"] else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "segre": _cmd_segre,
        "positivity": _cmd_positivity,
        "bound": _cmd_bound,
        "jet": _cmd_jet,
        "vecfields": _cmd_vecfields,
        "selftest": _cmd_selftest,
    }
    return handlers[args.command](args)


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
