"""Estimate p(1) from the low-order coefficients of p.

Pipeline: pick the map psi for the root region, choose the order m from the
tail bound at eps/2, compose p o psi up to order m, take the logarithm of
the resulting series and sum it at z = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstantPolynomial, InsufficientCoefficients, ZeroConstantTerm
from .logtaylor import LogSeries, log_taylor, taylor_sum_at_one
from .poly import PolynomialPrefix, compose_truncated
from .precision import DOUBLE, HIGH_BITS, Arith, bit_magnitude, get_arith, high_arith
from .transforms import RootRegion, TransformPlan, plan_for

LN2 = math.log(2.0)
MAX_BITS = 4096


@dataclass(frozen=True)
class Estimate:
    """Log-space estimate of p(1).

    ``log_value`` includes ``log_offset`` (= shift * ln 2 when the
    coefficients had to be scaled by 2**-shift to stay in range).
    ``rounding_bound`` is a first-order bound on the floating-point error
    of ``log_value``; ``precision_bits`` is the significand actually used.
    """

    log_value: complex
    value: complex
    order_used: int
    tail_bound: float
    region: RootRegion
    plan: TransformPlan
    log_offset: float = 0.0
    rounding_bound: float = 0.0
    precision_bits: int = 53


@dataclass(frozen=True)
class LogExpansion:
    """Everything computed on the way to an estimate; partial sums of
    ``series`` give T_j(1) for every j up to the selected order."""

    plan: TransformPlan
    series: LogSeries
    log_offset: float
    rounding_bound: float
    arith: Arith

    def partial_sums(self) -> list:
        """T_1(1), ..., T_m(1) (offset included), in working precision."""
        out = []
        acc = [self.series.f0]
        for b in self.series.coeffs:
            acc.append(b)
            with self.arith.active():
                out.append(self.arith.fsum(acc) + self.log_offset)
        return out


def _coefficient_shift(p: PolynomialPrefix, top: int) -> int:
    biggest = max(bit_magnitude(p.known[k]) for k in range(top + 1))
    shift = biggest + (top + 1).bit_length() - DOUBLE.max_exponent
    return max(shift, 0)


def _rounding_bound(p, plan: TransformPlan, top: int, shift: int, f: LogSeries, u: float) -> float:
    """First-order estimate of the rounding error in T_m(1).

    Composition and the log recurrence both amount to a perturbation dg of
    g with |dg_k| bounded by u times the magnitudes that enter coefficient k
    (Horner on |a_k|, |psi_k| for the composition; the recurrence terms for
    the log). The induced error in ln g is dg / g; |1/g| is majorized by the
    coefficients of exp(sum |b_i| z^i) / |c_0|.
    """
    m = plan.m
    psi = np.abs(np.asarray([complex(v) for v in plan.psi.coeffs[: m + 1]]))
    a = [abs(DOUBLE.from_exact(p.known[k], shift)) for k in range(top + 1)]
    M = np.zeros(m + 1)
    M[0] = a[top]
    for j in range(top - 1, -1, -1):
        M = np.convolve(M, psi)[: m + 1]
        M[0] += a[j]
    c0 = a[0]
    b = np.abs(np.asarray([complex(v) for v in f.coeffs], dtype=complex))
    if c0 == 0 or not (np.all(np.isfinite(M)) and np.all(np.isfinite(b))):
        return math.inf
    kb = np.concatenate([[0.0], np.arange(1, m + 1) * b])
    D = np.empty(m + 1)
    D[0] = u * M[0]
    H = np.empty(m + 1)
    H[0] = 1.0 / c0
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, m + 1):
            size = k * M[k] + np.dot(kb[1:k], M[k - 1 : 0 : -1])
            D[k] = u * ((k + 1) * size / k + (top + 1) * (m + 2) * M[k])
            H[k] = np.dot(kb[1 : k + 1], H[k - 1 :: -1][:k]) / k
        total = float(np.sum(np.convolve(D, H)[: m + 1]))
    total += u * (m + 1) * (abs(complex(f.f0)) + float(np.sum(b)))
    return total if math.isfinite(total) else math.inf


def _expand(p, region, eps, arith, plan=None) -> LogExpansion:
    if plan is None:
        plan = plan_for(region, p.degree, eps / 2, arith)
    m = plan.m
    top = min(m, p.degree)
    if p.K < top:
        raise InsufficientCoefficients(top, p.K)
    dshift = _coefficient_shift(p, top)
    shift = dshift if arith is DOUBLE else 0
    g = compose_truncated(p, plan.psi, m, shift=shift)
    if g.coeffs[0] == 0:
        raise OverflowError("a_0 underflows after rescaling; use a higher precision")
    f = log_taylor(g)
    bound = _rounding_bound(p, plan, top, dshift, f, arith.unit_roundoff)
    return LogExpansion(plan, f, shift * LN2, bound, arith)


def log_expansion(
    p: PolynomialPrefix,
    region: RootRegion,
    eps: float,
    precision: str | int | Arith = "auto",
    rounding_tol: float | None = None,
) -> LogExpansion:
    """Compose and take the log, choosing precision as requested.

    ``"auto"`` runs in double first and re-runs with as many gmpy2 bits as
    the rounding bound asks for whenever it exceeds ``rounding_tol``
    (default eps/4, inside the eps/2 reserved for rounding).
    """
    if not (0 < eps < 1):
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if not p.known[0]:
        raise ZeroConstantTerm("a_0 = 0")
    if rounding_tol is None:
        rounding_tol = eps / 4
    arith = get_arith(precision)
    exp = _expand(p, region, eps, arith)
    if precision != "auto" or exp.rounding_bound <= rounding_tol:
        return exp
    if math.isfinite(exp.rounding_bound):
        extra = math.ceil(math.log2(exp.rounding_bound / rounding_tol))
    else:
        extra = 4 * MAX_BITS
    for _ in range(4):
        bits = min(MAX_BITS, max(HIGH_BITS, 32 * math.ceil((exp.arith.bits + extra + 16) / 32)))
        hi = high_arith(bits)
        exp = _expand(p, region, eps, hi, plan_for(region, p.degree, eps / 2, hi))
        if exp.rounding_bound <= rounding_tol or bits == MAX_BITS:
            return exp
        extra = math.ceil(math.log2(exp.rounding_bound / rounding_tol)) if math.isfinite(exp.rounding_bound) else bits
    return exp


def approximate_log_p1(
    p: PolynomialPrefix,
    region: RootRegion,
    eps: float,
    precision: str | int | Arith = "auto",
) -> Estimate:
    """Estimate ln p(1) to within eps/2 plus rounding.

    The root-region hypothesis is the caller's promise and is not checked.
    """
    exp = log_expansion(p, region, eps, precision)
    arith = exp.arith
    with arith.active():
        log_value = taylor_sum_at_one(exp.series) + exp.log_offset
    if arith is DOUBLE:
        log_value = complex(log_value)
    return Estimate(
        log_value=log_value,
        value=arith.exp(log_value),
        order_used=exp.plan.m,
        tail_bound=exp.plan.tail_bound,
        region=region,
        plan=exp.plan,
        log_offset=exp.log_offset,
        rounding_bound=exp.rounding_bound,
        precision_bits=arith.bits,
    )


def approximate_p1(p, region, eps, precision="auto") -> Estimate:
    """Same as :func:`approximate_log_p1`; read ``.value`` for p(1)."""
    return approximate_log_p1(p, region, eps, precision)


def approximate_derivative_ratio(p: PolynomialPrefix, region: RootRegion, eps: float, precision="auto"):
    """Estimate p'(1) / p(1) within relative error eps.

    p' keeps the root-region hypothesis (Rolle for real roots, Gauss-Lucas
    for the half-plane), so both logs go through the same pipeline at eps/2.
    """
    if p.degree == 0:
        raise ConstantPolynomial("p is constant, p'/p = 0")
    if p.K < 1 or not p.known[1]:
        raise ZeroConstantTerm("a_1 = 0, so p'(0) = 0")
    dp = p.derivative()
    top = approximate_log_p1(p, region, eps / 2, precision)
    bottom = approximate_log_p1(dp, region, eps / 2, precision)
    if top.precision_bits > 53 or bottom.precision_bits > 53:
        arith = high_arith(max(top.precision_bits, bottom.precision_bits))
    else:
        arith = DOUBLE
    return arith.exp(bottom.log_value - top.log_value)


def sampled_zero_free(p: PolynomialPrefix, plan: TransformPlan, radii: int = 32, angles: int = 256) -> float:
    """Smallest sampled |p(psi(z))| over |z| < beta; debugging aid only.

    Needs the full coefficient list. A value near zero means the root
    region promised for p is probably wrong.
    """
    if not p.is_complete:
        raise InsufficientCoefficients(p.degree, p.K)
    coeffs = np.array([complex(DOUBLE.from_exact(a)) for a in p.known])
    r = plan.beta * np.linspace(0.0, 1.0, radii, endpoint=False)
    t = np.exp(2j * np.pi * np.arange(angles) / angles)
    z = np.outer(r, t).ravel()
    w = plan.psi_at(z)
    vals = np.polyval(coeffs[::-1], w)
    return float(np.min(np.abs(vals)))
