"""Taylor coefficients of ln g from those of g.

Differentiating ln g gives g' = f' g, i.e. for the normalized coefficients
g = sum c_k z^k, f = ln g = sum b_k z^k

    k c_k = sum_{i=1}^{k} i b_i c_{k-i},

a triangular system in b_1..b_m with diagonal c_0, solved by forward
substitution in O(m^2). This is the same recurrence as the one on the
derivatives g^(k)(0) = sum_j C(k-1, j) f^(k-j)(0) g^(j)(0), divided through
by (k-1)!, which keeps every quantity bounded for large m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ZeroConstantTerm
from .poly import TruncatedSeries
from .precision import DOUBLE, Arith


@dataclass(frozen=True)
class LogSeries:
    """Truncated Taylor expansion of f = ln g at 0.

    ``coeffs`` holds b_1..b_m (b_k = f^(k)(0)/k!); ``f0`` is the principal
    logarithm of g(0).
    """

    f0: complex
    coeffs: np.ndarray
    arith: Arith = DOUBLE

    @property
    def order(self) -> int:
        return self.coeffs.size

    @property
    def derivs(self) -> list:
        """f^(1)(0)..f^(m)(0); overflows to inf in double mode past k ~ 170."""
        out = []
        fact = 1
        for k, b in enumerate(self.coeffs, start=1):
            fact *= k
            if self.arith is DOUBLE:
                try:
                    out.append(complex(b) * float(fact))
                except OverflowError:
                    out.append(complex(math.inf))
            else:
                out.append(b * fact)
        return out

    @classmethod
    def from_derivatives(cls, f0, derivs: Sequence, arith: Arith = DOUBLE) -> "LogSeries":
        with arith.active():
            b = [d / math.factorial(k) for k, d in enumerate(derivs, start=1)]
        return cls(f0, arith.array(b) if b else arith.zeros(0), arith)


def log_taylor(g: TruncatedSeries) -> LogSeries:
    """Recover ln g up to order m from g up to order m."""
    arith = g.arith
    c = g.coeffs
    c0 = c[0]
    if c0 == 0:
        raise ZeroConstantTerm("g(0) = 0, logarithm undefined")
    m = g.order
    # kb[k] = k * b_k
    kb = arith.zeros(m + 1)
    with arith.active():
        for k in range(1, m + 1):
            acc = k * c[k]
            if k > 1:
                acc = acc - np.dot(kb[1:k], c[k - 1 : 0 : -1])
            kb[k] = acc / c0
        if arith is DOUBLE:
            b = kb[1:] / np.arange(1, m + 1)
        else:
            b = np.array([kb[k] / k for k in range(1, m + 1)], dtype=object)
    return LogSeries(arith.log(c0), b, arith)


def taylor_sum_at_one(f: LogSeries):
    """T_m(1) = f(0) + sum_k f^(k)(0)/k!, with compensated summation."""
    return f.arith.fsum([f.f0, *f.coeffs])


def exp_series(f: LogSeries, c0=None) -> TruncatedSeries:
    """Inverse of :func:`log_taylor`: coefficients of g = exp(f) up to order m.

    Forward application of the same recurrence; ``c0`` defaults to exp(f0).
    Used as a round-trip oracle in tests.
    """
    arith = f.arith
    m = f.order
    c = arith.zeros(m + 1)
    c[0] = arith.exp(f.f0) if c0 is None else c0
    kb = arith.zeros(m + 1)
    with arith.active():
        for k in range(1, m + 1):
            kb[k] = k * f.coeffs[k - 1]
        for k in range(1, m + 1):
            c[k] = np.dot(kb[1 : k + 1], c[k - 1 :: -1][:k]) / k
    return TruncatedSeries(c)
