"""Disc-to-region maps psi with psi(0) = 0, psi(1) = 1, and order selection.

Each map sends the disc |z| < beta into the complement of the region where
p may vanish, so g = p o psi has no zeros (and, for the rational maps, no
poles except at |z| = beta) inside that disc. The truncation order then
follows from the tail bound N / (beta^m (beta - 1) (m + 1)).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ContainmentCheckFailed, DeltaOutOfRange
from .poly import TruncatedSeries
from .precision import Arith, get_arith

REAL_ROOTED_DELTA_CAP = 0.74
STABLE_DELTA_CAP = 0.99
CONTAINMENT_SAMPLES = 4096
MIN_RHO_FRACTION = 2.0**-40


class RegionKind(str, enum.Enum):
    REAL_ROOTED = "real-rooted"
    STABLE = "stable"
    INTERVAL = "interval"
    SECTOR = "sector"

    @property
    def experimental(self) -> bool:
        return self in (RegionKind.INTERVAL, RegionKind.SECTOR)


@dataclass(frozen=True)
class RootRegion:
    """Where the roots of p are promised to lie (or to stay away from).

    REAL_ROOTED: real roots <= -delta. STABLE: Re(root) <= -delta.
    INTERVAL: no roots within delta of [0, 1]. SECTOR: no roots within
    delta of {|arg z| <= alpha}.
    """

    kind: RegionKind
    delta: float
    alpha: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", RegionKind(self.kind))
        _check_delta(self.delta)
        if self.kind is RegionKind.SECTOR:
            if self.alpha is None or not (0 < self.alpha <= math.pi / 2):
                raise DeltaOutOfRange(f"sector half-angle must lie in (0, pi/2], got {self.alpha}")
        elif self.alpha is not None:
            raise ValueError("alpha only applies to sector regions")

    @classmethod
    def real_rooted(cls, delta):
        return cls(RegionKind.REAL_ROOTED, delta)

    @classmethod
    def stable(cls, delta):
        return cls(RegionKind.STABLE, delta)

    @classmethod
    def interval(cls, delta):
        return cls(RegionKind.INTERVAL, delta)

    @classmethod
    def sector(cls, alpha, delta):
        return cls(RegionKind.SECTOR, delta, alpha)


@dataclass(frozen=True)
class TransformPlan:
    kind: RegionKind
    rho: float
    xi: float
    beta: float
    psi: TruncatedSeries
    m: int
    degree_bound: int | None = None
    tail_bound: float | None = None

    def psi_at(self, z):
        """Evaluate the map itself (closed form for the rational maps)."""
        z = np.asarray(z, dtype=complex)
        if self.kind is RegionKind.REAL_ROOTED:
            return self.rho / (1 - self.xi * z) ** 2 - self.rho
        if self.kind is RegionKind.STABLE:
            return self.rho / (1 - self.xi * z) - self.rho
        return _polyval(np.asarray(self.psi.coeffs, dtype=complex), z)

    def with_degree_bound(self, N: int) -> "TransformPlan":
        return TransformPlan(
            self.kind, self.rho, self.xi, self.beta, self.psi, self.m,
            N, tail_bound(self.beta, N, self.m),
        )


def _check_delta(delta):
    if not (0 < delta < 1):
        raise DeltaOutOfRange(f"delta must lie in (0, 1), got {delta}")


def _polyval(coeffs, z):
    out = np.zeros_like(z, dtype=complex)
    for c in coeffs[::-1]:
        out = out * z + c
    return out


def tail_bound(beta: float, N: int, m: int) -> float:
    """N / (beta^m (beta - 1) (m + 1)), evaluated in log space."""
    if N == 0:
        return 0.0
    log_b = math.log(N) - m * math.log(beta) - math.log(beta - 1) - math.log(m + 1)
    return math.exp(log_b) if log_b < 700 else math.inf


def required_order(beta: float, degree_bound: int, eps: float) -> int:
    """Smallest m >= 1 whose tail bound is at most eps (direct scan)."""
    if not beta > 1:
        raise ValueError(f"beta must exceed 1, got {beta}")
    N = max(int(degree_bound), 1)
    target = math.log(eps)
    log_n = math.log(N) - math.log(beta - 1)
    log_beta = math.log(beta)
    m = 1
    while log_n - m * log_beta - math.log(m + 1) > target:
        m += 1
    return m


# ---------------------------------------------------------------- main maps

def real_rooted_parameters(delta: float) -> tuple[float, float, float]:
    _check_delta(delta)
    rho = 4.0 * min(delta, REAL_ROOTED_DELTA_CAP) / 3.0
    xi = 1.0 - math.sqrt(rho / (1.0 + rho))
    return rho, xi, 1.0 / xi


def stable_parameters(delta: float) -> tuple[float, float, float]:
    _check_delta(delta)
    rho = min(delta, STABLE_DELTA_CAP)
    return rho, 1.0 / (1.0 + rho), 1.0 + rho


def real_rooted_transform(
    delta: float, m: int, degree_bound: int | None = None, precision: str | Arith = "double"
) -> TransformPlan:
    """psi(z) = rho / (1 - xi z)^2 - rho with rho = 4 delta / 3.

    Avoids the ray (-inf, -delta] on |z| < beta = 1/xi. Taylor coefficients
    are psi_k = rho (k + 1) xi^k.
    """
    rho, xi, beta = real_rooted_parameters(delta)
    arith = get_arith(precision)
    coeffs = arith.zeros(m + 1)
    with arith.active():
        r = arith.real(rho)
        x = 1 - arith.sqrt(r / (1 + r))
        power = x
        for k in range(1, m + 1):
            coeffs[k] = r * (k + 1) * power
            power = power * x
    plan = TransformPlan(RegionKind.REAL_ROOTED, rho, xi, beta, TruncatedSeries(coeffs), m)
    return plan if degree_bound is None else plan.with_degree_bound(degree_bound)


def stable_transform(
    delta: float, m: int, degree_bound: int | None = None, precision: str | Arith = "double"
) -> TransformPlan:
    """psi(z) = rho / (1 - xi z) - rho with rho = delta, xi = 1 / (1 + rho).

    Avoids the half-plane Re w <= -delta on |z| < beta = 1 + rho.
    """
    rho, xi, beta = stable_parameters(delta)
    arith = get_arith(precision)
    coeffs = arith.zeros(m + 1)
    with arith.active():
        r = arith.real(rho)
        x = 1 / (1 + r)
        power = x
        for k in range(1, m + 1):
            coeffs[k] = r * power
            power = power * x
    plan = TransformPlan(RegionKind.STABLE, rho, xi, beta, TruncatedSeries(coeffs), m)
    return plan if degree_bound is None else plan.with_degree_bound(degree_bound)


# -------------------------------------------------------- experimental maps

def interval_distance(w: np.ndarray) -> np.ndarray:
    """Euclidean distance from each w to the segment [0, 1]."""
    return np.abs(w - np.clip(w.real, 0.0, 1.0))


def sector_distance(w: np.ndarray, alpha: float) -> np.ndarray:
    """Distance from each w to the closed sector {|arg z| <= alpha} (0 included)."""
    r = np.abs(w)
    theta = np.abs(np.angle(w))
    d = np.where(theta >= alpha + math.pi / 2, r, r * np.sin(np.clip(theta - alpha, 0.0, None)))
    return np.where(theta <= alpha, 0.0, d)


def sample_on_circle(coeffs: np.ndarray, radius: float, samples: int) -> np.ndarray:
    """Values of sum_k coeffs[k] z^k at ``samples`` equally spaced points of |z| = radius.

    Coefficients are folded modulo ``samples`` and evaluated with one FFT,
    which is exact for any degree.
    """
    k = np.arange(coeffs.size)
    scaled = coeffs * np.exp(k * math.log(radius))
    folded = np.zeros(samples, dtype=complex)
    np.add.at(folded, k % samples, scaled)
    # fft uses exp(-2 pi i jk/n); conj-trick gives the exp(+...) evaluation
    return np.conj(np.fft.fft(np.conj(folded)))


def _containment_samples(m: int) -> int:
    n = CONTAINMENT_SAMPLES
    while n < 4 * (m + 1):
        n *= 2
    return n


def containment_margin(plan: TransformPlan, distance: Callable[[np.ndarray], np.ndarray]) -> float:
    """Largest sampled distance from psi(|z| = beta) to the target set.

    Distance to a convex set composed with a polynomial is subharmonic, so
    the maximum over the closed disc is attained on its boundary.
    """
    coeffs = np.asarray(plan.psi.coeffs, dtype=complex)
    w = sample_on_circle(coeffs, plan.beta, _containment_samples(plan.m))
    return float(np.max(distance(w)))


def _halving_search(delta, m, build, distance, precision, what):
    arith = get_arith(precision)
    limit = delta * (1 - 0.1)
    rho = delta
    while rho >= MIN_RHO_FRACTION * delta:
        with arith.active():
            plan = build(rho, arith)
        if plan is not None and containment_margin(plan, distance) <= limit:
            return plan
        rho /= 2
    raise ContainmentCheckFailed(
        f"no rho in [2^-40 delta, delta] keeps the order-{m} {what} map within {delta} of the target"
    )


def _normalized(arith, raw: list, m: int) -> TruncatedSeries:
    coeffs = arith.zeros(m + 1)
    total = arith.fsum(raw)
    with arith.active():
        for k, v in enumerate(raw, start=1):
            coeffs[k] = v / total
    return TruncatedSeries(coeffs)


def interval_transform(
    delta: float, m: int, degree_bound: int | None = None, precision: str | Arith = "double"
) -> TransformPlan:
    """Polynomial map into the delta-neighbourhood of [0, 1]  (experimental).

    Truncation of rho ln(1 / (1 - xi z)) with xi = 1 - e^{-1/rho}, rescaled
    so the polynomial takes the value 1 at z = 1.
    """
    _check_delta(delta)
    if m < 1:
        raise ValueError("order must be at least 1")

    def build(rho, arith):
        xi = -math.expm1(-1.0 / rho)
        beta = math.expm1(-1.0 - 1.0 / rho) / math.expm1(-1.0 / rho)
        if not beta > 1.0:
            return None
        r = arith.real(rho)
        x = 1 - arith.exp(-1 / r) if arith.name == "high" else xi
        raw, power = [], x
        for k in range(1, m + 1):
            raw.append(r * power / k)
            power = power * x
        return TransformPlan(RegionKind.INTERVAL, rho, xi, beta, _normalized(arith, raw, m), m)

    plan = _halving_search(delta, m, build, interval_distance, precision, "interval")
    return plan if degree_bound is None else plan.with_degree_bound(degree_bound)


def sector_transform(
    alpha: float,
    delta: float,
    m: int,
    degree_bound: int | None = None,
    precision: str | Arith = "double",
) -> TransformPlan:
    """Polynomial map into the delta-neighbourhood of {|arg z| <= alpha}  (experimental).

    Truncated binomial series of rho (1 - xi z)^{-2 alpha / pi} - rho with
    xi = 1 - (rho / (1 + rho))^{pi / (2 alpha)}, rescaled to hit 1 at z = 1.
    """
    _check_delta(delta)
    if not (0 < alpha <= math.pi / 2):
        raise DeltaOutOfRange(f"alpha must lie in (0, pi/2], got {alpha}")
    if m < 1:
        raise ValueError("order must be at least 1")
    s = 2.0 * alpha / math.pi

    def build(rho, arith):
        q = (rho / (1.0 + rho)) ** (1.0 / s)
        xi = 1.0 - q
        beta = (1.0 - q / 2.0) / xi
        if not beta > 1.0:
            return None
        r = arith.real(rho)
        if arith.name == "high":
            x = 1 - (r / (1 + r)) ** (1 / arith.real(s))
            sw = arith.real(s)
        else:
            x, sw = xi, s
        raw, c = [], 1
        for k in range(1, m + 1):
            c = c * (sw + k - 1) / k * x
            raw.append(r * c)
        return TransformPlan(RegionKind.SECTOR, rho, xi, beta, _normalized(arith, raw, m), m)

    plan = _halving_search(
        delta, m, build, lambda w: sector_distance(w, alpha), precision, "sector"
    )
    return plan if degree_bound is None else plan.with_degree_bound(degree_bound)


def experimental_order(region: RootRegion, start: int = 16, cap: int = 1 << 16) -> int:
    """Smallest power-of-two map degree (from ``start``) whose containment check passes."""
    m = start
    while m <= cap:
        try:
            _experimental_plan(region, m, "double")
            return m
        except ContainmentCheckFailed:
            m *= 2
    raise ContainmentCheckFailed(f"no map degree up to {cap} passes the containment check")


def _experimental_plan(region: RootRegion, m: int, precision) -> TransformPlan:
    if region.kind is RegionKind.INTERVAL:
        return interval_transform(region.delta, m, precision=precision)
    return sector_transform(region.alpha, region.delta, m, precision=precision)


def plan_for(region: RootRegion, n: int, eps: float, precision: str | Arith = "double") -> TransformPlan:
    """Transform and truncation order for a degree-n polynomial at error budget eps.

    The order is chosen against the tail bound with eps as the whole budget;
    callers wanting a rounding reserve pass eps/2.
    """
    if region.kind is RegionKind.REAL_ROOTED:
        _, _, beta = real_rooted_parameters(region.delta)
        N = 4 * n  # numerator and denominator (1 - xi z)^{2n} each of degree <= 2n
        m = required_order(beta, N, eps)
        return real_rooted_transform(region.delta, m, N, precision)
    if region.kind is RegionKind.STABLE:
        _, _, beta = stable_parameters(region.delta)
        N = 2 * n
        m = required_order(beta, N, eps)
        return stable_transform(region.delta, m, N, precision)

    # polynomial maps: g = p o psi is a polynomial of degree n * deg(psi)
    d = experimental_order(region)
    base = _experimental_plan(region, d, precision)
    N = n * d
    m = required_order(base.beta, N, eps)
    # psi keeps its full degree so psi_at stays exact; composition reads 0..m
    return TransformPlan(
        base.kind, base.rho, base.xi, base.beta, base.psi.truncate(max(m, d)), m, N,
        tail_bound(base.beta, N, m),
    )
