"""Command-line front end.

    truncapprox estimate {matchings,independent,unbranched} GRAPH --eps E [--exact-check]
    truncapprox counts {matchings,independent,unbranched} GRAPH K
    truncapprox poly {real-rooted,stable,interval,sector} COEFFS --delta D --eps E [--average]

Exit codes: 0 ok, 2 bad input, 3 root-region hypothesis violated
(claw in an independent-set query), 4 not enough coefficients.
"""

from __future__ import annotations

import argparse
import cmath
import decimal
import json
import math
import sys
import time

from . import graphcount as gc
from .approximator import Estimate, approximate_derivative_ratio, approximate_p1
from .errors import ApproxError, InsufficientCoefficients, NotClawFree
from .poly import read_coefficients
from .transforms import RegionKind, RootRegion

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_HYPOTHESIS = 3
EXIT_COEFFICIENTS = 4


def format_estimate(log_value: complex, digits: int = 15) -> str:
    """exp(log_value) to ``digits`` significant digits, without float overflow."""
    log_value = complex(log_value)
    with decimal.localcontext() as ctx:
        ctx.prec = digits + 10
        mag = decimal.Decimal(log_value.real).exp()
        if log_value.imag == 0:
            return f"{mag:.{digits}g}"
        re = mag * decimal.Decimal(math.cos(log_value.imag))
        im = mag * decimal.Decimal(math.sin(log_value.imag))
        sign = "+" if im >= 0 else "-"
        return f"{re:.{digits}g}{sign}{abs(im):.{digits}g}j"


def _finite(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def plan_report(est: Estimate) -> dict:
    p = est.plan
    return {
        "kind": p.kind.value,
        "delta": est.region.delta,
        "alpha": est.region.alpha,
        "rho": p.rho,
        "xi": p.xi,
        "beta": p.beta,
        "m": p.m,
        "degree_bound": p.degree_bound,
        "tail_bound": _finite(p.tail_bound),
    }


def estimate_report(est: Estimate) -> dict:
    lv = complex(est.log_value)
    return {
        "log_estimate": {"re": lv.real, "im": lv.imag},
        "estimate": format_estimate(lv),
        "precision_bits": est.precision_bits,
        "rounding_bound": _finite(est.rounding_bound),
    }


def emit(report: dict, as_json: bool, out=None):
    out = out or sys.stdout
    if as_json:
        print(json.dumps(report, indent=2), file=out)
        return
    for key, value in report.items():
        if isinstance(value, dict):
            inner = ", ".join(f"{k}={v}" for k, v in value.items())
            print(f"{key}: {inner}", file=out)
        elif value is not None:
            print(f"{key}: {value}", file=out)


def cmd_estimate(args) -> int:
    t0 = time.perf_counter()
    G = gc.read_graph(args.graph)
    est, prefix = gc.estimate_total(G, args.kind, args.eps, args.precision)
    report = {
        "command": ["estimate", args.kind, args.graph],
        "inputs": {"file": args.graph, "kind": args.kind, "eps": args.eps, "precision": args.precision},
        "plan": plan_report(est),
        "counts_used": prefix.K,
        **estimate_report(est),
        "oracle": None,
    }
    if args.exact_check:
        exact = gc.exact_total(G, args.kind)
        err = abs(complex(est.log_value) - math.log(exact))
        report["oracle"] = {"exact": str(exact), "observed_error": err}
    report["wall_time_ms"] = round(1000 * (time.perf_counter() - t0), 3)
    emit(report, args.json)
    return EXIT_OK


def cmd_counts(args) -> int:
    G = gc.read_graph(args.graph)
    cv = gc.structure_counts(G, args.kind, args.K)
    if args.json:
        print(json.dumps({"kind": args.kind, "upto": cv.upto, "counts": list(cv.counts)}, indent=2))
    else:
        print(" ".join(str(c) for c in cv.counts))
    return EXIT_OK


def _region(args) -> RootRegion:
    kind = RegionKind(args.mode)
    if kind is RegionKind.SECTOR:
        if args.alpha is None:
            raise ApproxError("sector mode needs --alpha")
        return RootRegion.sector(args.alpha, args.delta)
    return RootRegion(kind, args.delta)


def cmd_poly(args) -> int:
    t0 = time.perf_counter()
    p = read_coefficients(args.coeffs)
    region = _region(args)
    est = approximate_p1(p, region, args.eps, args.precision)
    report = {
        "command": ["poly", args.mode, args.coeffs],
        "inputs": {"file": args.coeffs, "kind": args.mode, "eps": args.eps, "precision": args.precision},
        "plan": plan_report(est),
        "counts_used": min(est.order_used, p.degree),
        **estimate_report(est),
        "oracle": None,
    }
    if args.average:
        ratio = complex(approximate_derivative_ratio(p, region, args.eps, args.precision))
        report["average"] = {"re": ratio.real, "im": ratio.imag}
    if args.exact_check and p.is_complete:
        from .poly import evaluate_exact

        exact = complex(evaluate_exact(p, 1, "high"))
        err = abs(cmath.log(complex(est.value) / exact)) if exact else None
        report["oracle"] = {"exact": repr(exact.real) if exact.imag == 0 else repr(exact), "observed_error": err}
    report["wall_time_ms"] = round(1000 * (time.perf_counter() - t0), 3)
    emit(report, args.json)
    return EXIT_OK


def _eps(text):
    x = float(text)
    if not (0 < x < 1):
        raise argparse.ArgumentTypeError("eps must lie in (0, 1)")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="truncapprox",
        description="Approximate p(1) and structure totals from low-order coefficients.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    kinds = [k.value for k in gc.Kind]

    def common(sp):
        sp.add_argument("--eps", type=_eps, default=1e-2, help="relative error (default 0.01)")
        sp.add_argument("--precision", choices=["auto", "double", "high"], default="auto")
        sp.add_argument("--json", action="store_true", help="emit a JSON report")

    sp = sub.add_parser("estimate", help="estimate a structure total of a graph")
    sp.add_argument("kind", choices=kinds)
    sp.add_argument("graph")
    sp.add_argument("--exact-check", action="store_true", help="compare with brute force (small graphs)")
    common(sp)
    sp.set_defaults(func=cmd_estimate)

    sp = sub.add_parser("counts", help="exact structure counts up to size K")
    sp.add_argument("kind", choices=kinds)
    sp.add_argument("graph")
    sp.add_argument("K", type=int)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_counts)

    sp = sub.add_parser("poly", help="estimate p(1) from a coefficient file")
    sp.add_argument("mode", choices=[k.value for k in RegionKind])
    sp.add_argument("coeffs")
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--alpha", type=float, help="sector half-angle (sector mode)")
    sp.add_argument("--average", action="store_true", help="also estimate p'(1)/p(1)")
    sp.add_argument("--exact-check", action="store_true", help="compare with the full sum (complete files)")
    common(sp)
    sp.set_defaults(func=cmd_poly)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotClawFree as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except InsufficientCoefficients as exc:
        print(f"error: {exc} (required m = {exc.m_needed})", file=sys.stderr)
        return EXIT_COEFFICIENTS
    except (ApproxError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
