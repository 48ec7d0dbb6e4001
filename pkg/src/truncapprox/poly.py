"""Exact coefficient prefixes and truncated power-series arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (
    InsufficientCoefficients,
    NonzeroConstantTerm,
    ParseError,
    ZeroConstantTerm,
)
from .precision import DOUBLE, Arith, arith_of, get_arith


@dataclass(frozen=True)
class ExactComplex:
    """Complex coefficient with exact rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __mul__(self, other):
        if isinstance(other, ExactComplex):
            return ExactComplex(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return ExactComplex(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __complex__(self):
        return complex(float(self.re), float(self.im))


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients c_0..c_m of a power series truncated at order m.

    ``coeffs`` is a read-only numpy array, complex128 in double mode or an
    object array of gmpy2 ``mpc`` in high-precision mode.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = self.coeffs
        if not isinstance(c, np.ndarray):
            c = DOUBLE.array(c)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("a truncated series needs at least c_0")
        if c.dtype != object and not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def of(cls, values: Sequence, precision: str | Arith = "double") -> "TruncatedSeries":
        return cls(get_arith(precision).array(values))

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @property
    def arith(self) -> Arith:
        return arith_of(self.coeffs)

    def truncate(self, m: int) -> "TruncatedSeries":
        """Cut to order m, padding with zeros when m exceeds the current order."""
        if m <= self.order:
            return TruncatedSeries(self.coeffs[: m + 1])
        out = self.arith.zeros(m + 1)
        out[: self.coeffs.size] = self.coeffs
        return TruncatedSeries(out)

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, k):
        return self.coeffs[k]


@dataclass(frozen=True)
class PolynomialPrefix:
    """Known low-order coefficients a_0..a_K of a polynomial of full degree n.

    Coefficients are exact: ``int``, ``Fraction`` or :class:`ExactComplex`.
    """

    degree: int
    known: tuple

    def __post_init__(self):
        known = tuple(_as_exact(a) for a in self.known)
        object.__setattr__(self, "known", known)
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        if not known:
            raise ValueError("at least a_0 must be known")
        if len(known) - 1 > self.degree:
            raise ValueError(
                f"{len(known)} coefficients supplied for a polynomial of degree {self.degree}"
            )
        if not known[0]:
            raise ZeroConstantTerm("a_0 = 0: ln p(0) is undefined")

    @classmethod
    def full(cls, coeffs: Sequence) -> "PolynomialPrefix":
        """Every coefficient known; trailing zeros do not lower the declared degree."""
        return cls(len(coeffs) - 1, tuple(coeffs))

    @property
    def K(self) -> int:
        return len(self.known) - 1

    @property
    def is_complete(self) -> bool:
        return self.K == self.degree

    def coefficient(self, k: int):
        """a_k, with a_k = 0 above the declared degree."""
        if k <= self.K:
            return self.known[k]
        if k > self.degree:
            return 0
        raise InsufficientCoefficients(k, self.K)

    def derivative(self) -> "PolynomialPrefix":
        """Prefix of p' (a'_k = (k+1) a_{k+1}); may raise ZeroConstantTerm."""
        known = tuple((k + 1) * self.known[k + 1] for k in range(self.K))
        if not known:
            known = (0,)
        return PolynomialPrefix(self.degree - 1, known)


def _as_exact(a):
    if isinstance(a, bool):
        raise TypeError("boolean coefficient")
    if isinstance(a, (int, Fraction, ExactComplex)):
        return a
    if isinstance(a, complex):
        return ExactComplex(Fraction(a.real), Fraction(a.imag))
    if isinstance(a, float):
        return Fraction(a)
    if isinstance(a, tuple) and len(a) == 2:
        return ExactComplex(Fraction(a[0]), Fraction(a[1]))
    raise TypeError(f"unsupported coefficient type {type(a).__name__}")


def truncated_multiply(a: TruncatedSeries, b: TruncatedSeries, m: int) -> TruncatedSeries:
    """Product of two series with every monomial of degree > m discarded."""
    arith = a.arith
    with arith.active():
        prod = np.convolve(a.coeffs[: m + 1], b.coeffs[: m + 1])[: m + 1]
    if prod.size < m + 1:
        out = arith.zeros(m + 1)
        out[: prod.size] = prod
        prod = out
    return TruncatedSeries(prod)


def compose_truncated(
    p: PolynomialPrefix,
    psi: TruncatedSeries,
    m: int,
    shift: int = 0,
) -> TruncatedSeries:
    """Taylor coefficients 0..m of p(psi(z)) by Horner's scheme.

    Every Horner step truncates above degree m, so only a_0..a_m enter.
    Coefficients are converted to working precision as ``a_k * 2**-shift``.
    """
    arith = psi.arith
    if psi.coeffs[0] != 0:
        raise NonzeroConstantTerm("psi must vanish at 0")
    if psi.order < m:
        raise ValueError(f"psi has order {psi.order} < {m}")
    top = min(m, p.degree)
    if p.K < top:
        raise InsufficientCoefficients(top, p.K)

    s = psi.coeffs[: m + 1]
    acc = arith.zeros(m + 1)
    acc[0] = arith.from_exact(p.known[top], shift)
    with arith.active():
        for j in range(top - 1, -1, -1):
            acc = np.convolve(acc, s)[: m + 1]
            acc[0] = acc[0] + arith.from_exact(p.known[j], shift)
    return TruncatedSeries(acc)


def evaluate_exact(p: PolynomialPrefix, x, precision: str | Arith = "double"):
    """p(x) from a complete prefix, with compensated summation of the terms."""
    if not p.is_complete:
        raise InsufficientCoefficients(p.degree, p.K)
    arith = get_arith(precision)
    x = arith.from_exact(x) if not isinstance(x, complex) else arith.array([x])[0]
    terms = []
    power = 1
    with arith.active():
        for a in p.known:
            terms.append(arith.from_exact(a) * power)
            power = power * x
    return arith.fsum(terms)


def parse_coefficients(text: str) -> PolynomialPrefix:
    """Parse the plain-text coefficient format.

    First data line ``n K``; then K+1 lines, each a decimal integer or a
    ``re im`` pair of decimals. Lines starting with ``#`` are skipped.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line.split()))
    if not rows:
        raise ParseError("empty coefficient file")
    lineno, head = rows[0]
    if len(head) != 2:
        raise ParseError("expected header 'n K'", lineno)
    try:
        n, K = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("header values must be integers", lineno) from None
    if n < 0 or K < 0 or K > n:
        raise ParseError(f"need 0 <= K <= n, got n={n} K={K}", lineno)
    body = rows[1:]
    if len(body) != K + 1:
        raise ParseError(f"expected {K + 1} coefficient lines, found {len(body)}")
    known = []
    for lineno, parts in body:
        try:
            if len(parts) == 1:
                a = _parse_number(parts[0])
            elif len(parts) == 2:
                a = ExactComplex(_parse_number(parts[0]), _parse_number(parts[1]))
                if a.im == 0:
                    a = a.re if a.re.denominator != 1 else int(a.re)
            else:
                raise ValueError
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad coefficient {' '.join(parts)!r}", lineno) from None
        known.append(a)
    if not known[0]:
        raise ZeroConstantTerm("a_0 = 0: ln p(0) is undefined")
    return PolynomialPrefix(n, tuple(known))


def _parse_number(tok: str):
    try:
        return int(tok)
    except ValueError:
        return Fraction(tok)


def read_coefficients(path: str | Path) -> PolynomialPrefix:
    return parse_coefficients(Path(path).read_text())


def format_coefficients(p: PolynomialPrefix) -> str:
    lines = [f"{p.degree} {p.K}"]
    for a in p.known:
        if isinstance(a, ExactComplex):
            lines.append(f"{_fmt(a.re)} {_fmt(a.im)}")
        else:
            lines.append(_fmt(a))
    return "\n".join(lines) + "\n"


def _fmt(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return str(x)
