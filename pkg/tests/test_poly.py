from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from truncapprox.errors import (
    InsufficientCoefficients,
    NonzeroConstantTerm,
    ParseError,
    ZeroConstantTerm,
)
from truncapprox.poly import (
    ExactComplex,
    PolynomialPrefix,
    TruncatedSeries,
    compose_truncated,
    evaluate_exact,
    format_coefficients,
    parse_coefficients,
    truncated_multiply,
)

small_ints = st.integers(-9, 9)


def exact_compose(a, psi, m):
    """Oracle: expand sum_j a_j psi^j in full with Fractions, then cut at m."""
    out = [Fraction(0)] * (m + 1)
    power = [Fraction(1)]
    for aj in a:
        for k, c in enumerate(power[: m + 1]):
            out[k] += aj * c
        nxt = [Fraction(0)] * (len(power) + len(psi) - 1)
        for i, x in enumerate(power):
            for j, y in enumerate(psi):
                nxt[i + j] += x * y
        power = nxt
    return out


def test_compose_example():
    # (1 + 2x + x^2) o (z + z^2) = 1 + 2z + 3z^2 + ...
    g = compose_truncated(PolynomialPrefix.full([1, 2, 1]), TruncatedSeries.of([0, 1, 1]), 2)
    assert np.allclose(g.coeffs, [1, 2, 3])


def test_compose_rejects_nonzero_constant():
    with pytest.raises(NonzeroConstantTerm):
        compose_truncated(PolynomialPrefix.full([1, 1]), TruncatedSeries.of([1, 1]), 1)


def test_compose_needs_coefficients():
    p = PolynomialPrefix(10, (1, 2, 3))
    with pytest.raises(InsufficientCoefficients) as info:
        compose_truncated(p, TruncatedSeries.of([0, 1, 0, 0, 0]), 4)
    assert info.value.m_needed == 4


def test_compose_short_polynomial_needs_no_extra_coefficients():
    # degree 2 < m: a_3, a_4 are known zeros
    p = PolynomialPrefix.full([1, 1, 1])
    g = compose_truncated(p, TruncatedSeries.of([0, 1, 0, 0, 0]), 4)
    assert np.allclose(g.coeffs, [1, 1, 1, 0, 0])


@settings(max_examples=60, deadline=None)
@given(
    a=st.lists(small_ints, min_size=1, max_size=7).map(lambda a: [a[0] or 1, *a[1:]]),
    psi=st.lists(small_ints, min_size=1, max_size=8),
    m=st.integers(0, 8),
)
def test_compose_matches_exact_expansion(a, psi, m):
    psi = [0, *psi]
    want = exact_compose([Fraction(x) for x in a], [Fraction(x) for x in psi], m)
    psi_m = (psi + [0] * (m + 1))[: m + 1]
    got = compose_truncated(PolynomialPrefix.full(a), TruncatedSeries.of(psi_m), m)
    scale = max(1.0, max(abs(float(w)) for w in want))
    assert np.allclose(got.coeffs, [float(w) for w in want], rtol=0, atol=1e-12 * scale)
    hi = compose_truncated(PolynomialPrefix.full(a), TruncatedSeries.of(psi_m, "high"), m)
    assert all(complex(h) == float(w) for h, w in zip(hi.coeffs, want))


@settings(max_examples=50, deadline=None)
@given(
    head=st.lists(small_ints, min_size=1, max_size=6),
    tail=st.lists(small_ints, min_size=1, max_size=6),
    noise=st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=6),
    psi=st.lists(st.floats(-2, 2), min_size=5, max_size=5),
)
def test_truncation_sufficiency(head, tail, noise, psi):
    head[0] = head[0] or 1
    m = len(head) - 1
    a = head + tail
    b = head + [t + d for t, d in zip(tail, noise + [0] * len(tail))]
    s = TruncatedSeries.of(([0.0] + psi + [0.0] * m)[: m + 1])
    ga = compose_truncated(PolynomialPrefix.full(a), s, m)
    gb = compose_truncated(PolynomialPrefix.full(b), s, m)
    assert np.array_equal(ga.coeffs, gb.coeffs)


@settings(max_examples=50)
@given(
    a=st.lists(st.floats(-5, 5), min_size=1, max_size=8),
    b=st.lists(st.floats(-5, 5), min_size=1, max_size=8),
    m=st.integers(0, 9),
)
def test_truncated_multiply_commutes(a, b, m):
    A, B = TruncatedSeries.of(a), TruncatedSeries.of(b)
    ab = truncated_multiply(A, B, m).coeffs
    ba = truncated_multiply(B, A, m).coeffs
    assert ab.size == m + 1
    assert np.allclose(ab, ba, atol=1e-12)
    full = np.convolve(a, b)
    want = np.zeros(m + 1)
    want[: min(m + 1, full.size)] = full[: m + 1]
    assert np.allclose(ab, want, atol=1e-12)


def test_series_is_read_only():
    s = TruncatedSeries.of([1, 2, 3])
    with pytest.raises(ValueError):
        s.coeffs[0] = 5
    assert s.order == 2
    assert s.truncate(4).order == 4 and s.truncate(1).order == 1


def test_series_rejects_nonfinite():
    with pytest.raises(ValueError):
        TruncatedSeries.of([1, float("nan")])


def test_prefix_invariants():
    with pytest.raises(ZeroConstantTerm):
        PolynomialPrefix.full([0, 1])
    with pytest.raises(ValueError):
        PolynomialPrefix(1, (1, 2, 3))
    p = PolynomialPrefix(5, (1, 2))
    assert p.K == 1 and not p.is_complete
    assert p.coefficient(1) == 2
    assert p.coefficient(9) == 0
    with pytest.raises(InsufficientCoefficients):
        p.coefficient(3)


def test_derivative_prefix():
    p = PolynomialPrefix.full([1, 3, 3, 1])
    d = p.derivative()
    assert d.degree == 2 and d.known == (3, 6, 3)


def test_exact_complex():
    z = ExactComplex(Fraction(1, 2), 3)
    assert complex(z * 2) == complex(1, 6)
    assert complex(z * z) == complex(0.25 - 9, 3)
    assert not ExactComplex(0, 0)


def test_evaluate_exact():
    p = PolynomialPrefix.full([1, 4, 6, 4, 1])
    assert evaluate_exact(p, 1) == 16
    assert complex(evaluate_exact(p, 1, "high")) == 16
    assert abs(evaluate_exact(p, Fraction(1, 2)) - 1.5**4) < 1e-15


def test_parse_roundtrip():
    text = "# comment\n4 2\n1\n-3/2\n2.5 -1\n"
    p = parse_coefficients(text)
    assert p.degree == 4 and p.K == 2
    assert p.known[1] == Fraction(-3, 2)
    assert complex(p.known[2]) == complex(2.5, -1)
    assert parse_coefficients(format_coefficients(p)) == p


@pytest.mark.parametrize(
    "text, line",
    [
        ("3\n1\n", 1),
        ("3 1\n1\nx\n", 3),
        ("2 3\n1\n1\n1\n1\n", None),
        ("3 2\n1\n2\n", None),
        ("3 1\n0\n1\n", None),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises((ParseError, ZeroConstantTerm)) as info:
        parse_coefficients(text)
    if line is not None:
        assert info.value.line == line
