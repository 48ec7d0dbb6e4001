"""Working-precision backends.

Two modes share every numeric code path: ``double`` stores series in
complex128 numpy arrays, ``high`` stores gmpy2 ``mpc`` values in object
arrays (113-bit significand unless asked for more). Both support
``np.convolve`` and ``np.dot``. gmpy2 contexts are thread-local, so the
high mode is safe to use from several threads at different precisions.
"""

from __future__ import annotations

import cmath
import contextlib
import math
from fractions import Fraction

import gmpy2
import numpy as np

HIGH_BITS = 113


class Arith:
    name: str
    bits: int
    dtype: object

    @property
    def unit_roundoff(self) -> float:
        return 2.0 ** -self.bits

    def active(self):
        """Context manager making this precision current for the thread."""
        return contextlib.nullcontext()

    def zeros(self, n: int) -> np.ndarray:
        raise NotImplementedError

    def array(self, values) -> np.ndarray:
        raise NotImplementedError

    def real(self, x):
        raise NotImplementedError

    def from_exact(self, a, shift: int = 0):
        """Convert an exact coefficient ``a * 2**-shift`` to working precision."""
        raise NotImplementedError

    def fsum(self, values):
        raise NotImplementedError

    def log(self, x):
        raise NotImplementedError

    def exp(self, x):
        raise NotImplementedError

    def sqrt(self, x):
        raise NotImplementedError

    def __repr__(self):
        return f"<Arith {self.name} {self.bits}-bit>"


class DoubleArith(Arith):
    name = "double"
    bits = 53
    dtype = np.complex128
    # largest binary exponent a rescaled coefficient may reach
    max_exponent = 960

    def zeros(self, n):
        return np.zeros(n, dtype=np.complex128)

    def array(self, values):
        return np.array([complex(v) for v in values], dtype=np.complex128)

    def real(self, x):
        return float(x)

    def from_exact(self, a, shift=0):
        re, im = _exact_parts(a)
        if shift:
            re, im = re / (1 << shift), im / (1 << shift)
        return complex(float(re), float(im))

    def fsum(self, values):
        values = [complex(v) for v in values]
        return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))

    def log(self, x):
        return cmath.log(x)

    def exp(self, x):
        try:
            return cmath.exp(x)
        except OverflowError:
            return complex(math.inf, 0.0)

    def sqrt(self, x):
        return math.sqrt(x)


class HighArith(Arith):
    name = "high"
    dtype = object

    def __init__(self, bits: int = HIGH_BITS):
        self.bits = bits

    def active(self):
        return gmpy2.context(gmpy2.get_context(), precision=self.bits)

    def zeros(self, n):
        with self.active():
            zero = gmpy2.mpc(0)
        return np.array([zero] * n, dtype=object)

    def array(self, values):
        with self.active():
            return np.array([gmpy2.mpc(v) for v in values], dtype=object)

    def real(self, x):
        with self.active():
            if isinstance(x, Fraction):
                return gmpy2.mpfr(gmpy2.mpq(x.numerator, x.denominator))
            return gmpy2.mpfr(x)

    def from_exact(self, a, shift=0):
        re, im = _exact_parts(a)
        with self.active():
            out = gmpy2.mpc(
                gmpy2.mpfr(gmpy2.mpq(re.numerator, re.denominator)),
                gmpy2.mpfr(gmpy2.mpq(im.numerator, im.denominator)),
            )
            if shift:
                out = out / gmpy2.mpfr(2) ** shift
        return out

    def fsum(self, values):
        values = list(values)
        with self.active():
            values = [gmpy2.mpc(v) for v in values]
            return gmpy2.mpc(
                gmpy2.fsum(v.real for v in values), gmpy2.fsum(v.imag for v in values)
            )

    def log(self, x):
        with self.active():
            return gmpy2.log(gmpy2.mpc(x))

    def exp(self, x):
        with self.active():
            return gmpy2.exp(gmpy2.mpc(x))

    def sqrt(self, x):
        with self.active():
            return gmpy2.sqrt(gmpy2.mpfr(x))


DOUBLE = DoubleArith()
_HIGH: dict[int, HighArith] = {}


def high_arith(bits: int = HIGH_BITS) -> HighArith:
    if bits not in _HIGH:
        _HIGH[bits] = HighArith(bits)
    return _HIGH[bits]


def get_arith(precision: str | int | Arith = "double") -> Arith:
    """Resolve ``"double"``, ``"high"`` (113 bits) or a bit count to a backend.

    ``"auto"`` is handled by the approximator and starts out as double.
    """
    if isinstance(precision, Arith):
        return precision
    if precision in ("double", "auto"):
        return DOUBLE
    if precision == "high":
        return high_arith(HIGH_BITS)
    if isinstance(precision, int) and precision > 53:
        return high_arith(precision)
    raise ValueError(f"unknown precision {precision!r}")


def arith_of(values: np.ndarray) -> Arith:
    """Backend that produced a coefficient array."""
    if values.dtype != object:
        return DOUBLE
    return high_arith(values[0].precision[0])


def _exact_parts(a) -> tuple[Fraction, Fraction]:
    if isinstance(a, (int, Fraction)):
        return Fraction(a), Fraction(0)
    if hasattr(a, "re") and hasattr(a, "im"):
        return Fraction(a.re), Fraction(a.im)
    if isinstance(a, complex):
        return Fraction(a.real), Fraction(a.imag)
    if isinstance(a, float):
        return Fraction(a), Fraction(0)
    raise TypeError(f"cannot convert coefficient {a!r}")


def bit_magnitude(a) -> int:
    """Rough log2 of |a| for an exact coefficient (0 for a == 0)."""
    re, im = _exact_parts(a)
    m = max(abs(re), abs(im))
    if m == 0:
        return 0
    return m.numerator.bit_length() - m.denominator.bit_length()
