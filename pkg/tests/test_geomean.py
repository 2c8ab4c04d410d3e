import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from horadam._numeric import context
from horadam.errors import DomainError, NoConvergence
from horadam.geomean import (
    ExponentTriple,
    GeoInit,
    geo_exponents,
    geo_term_iterative,
    geo_term_symbolic,
    growth_convergence_report,
    growth_ratio,
    ratio_weights,
)
from horadam.recurrence import t_sequence

CTX = context(128)


def symbolic_oracle(n):
    """Exponent vectors by brute force: unit vectors, then the averaged sum."""
    vecs = [(Fraction(1), Fraction(0), Fraction(0)),
            (Fraction(0), Fraction(1), Fraction(0)),
            (Fraction(0), Fraction(0), Fraction(1))]
    while len(vecs) <= n:
        x, y, z = vecs[-3:]
        vecs.append(tuple((p + q + r) / 3 for p, q, r in zip(x, y, z)))
    return vecs[n]


@pytest.mark.parametrize(
    "n, expected",
    [
        (3, (1, 1, 1, 1)),
        (4, (1, 4, 4, 2)),
        (5, (4, 7, 16, 3)),
        (6, (16, 28, 37, 4)),
        (0, (1, 0, 0, 0)),
        (1, (0, 1, 0, 0)),
        (2, (0, 0, 1, 0)),
    ],
)
def test_exponent_table(n, expected):
    assert geo_exponents(n) == ExponentTriple(*expected)


def test_exponents_match_brute_force():
    for n in range(80):
        assert geo_exponents(n).weights() == symbolic_oracle(n)


def test_exponent_normalization():
    for n in range(3, 201):
        e = geo_exponents(n)
        assert e.num_a + e.num_b + e.num_c == 3**e.pow3


def test_exponent_recurrence_and_cube_identity():
    for n in range(0, 120):
        e0, e1, e2, e3 = (geo_exponents(n + k) for k in range(4))
        top = e3.pow3
        lhs = tuple(3 * v for v in e3.scaled(top))
        rhs = tuple(sum(col) for col in zip(e2.scaled(top), e1.scaled(top), e0.scaled(top)))
        # (g[n+3])^3 = g[n+2] g[n+1] g[n] over the common denominator 3**top
        assert lhs == rhs


def test_exponents_follow_t_recurrence():
    # after clearing powers of 3, each numerator obeys x[n+3] = x[n+2] + 3 x[n+1] + 9 x[n]
    for n in range(2, 150):
        hi, x2, x1, x0 = (geo_exponents(n + k) for k in (3, 2, 1, 0))
        for field in ("num_a", "num_b", "num_c"):
            assert getattr(hi, field) == (
                getattr(x2, field) + 3 * getattr(x1, field) + 9 * getattr(x0, field)
            )


def test_geo_term_symbolic_examples():
    assert geo_term_symbolic((8, 8, 8), 17) == 8
    assert abs(geo_term_symbolic((1, 1, 2), 3) - CTX.cbrt(2)) < CTX.ldexp(1, -125)
    expected = CTX.root(CTX.mpf(2) ** 16 * CTX.mpf(3) ** 28 * CTX.mpf(5) ** 37, 81)
    got = geo_term_symbolic((2, 3, 5), 6)
    assert abs(got / expected - 1) < CTX.ldexp(1, -120)
    assert abs(got / geo_term_iterative((2, 3, 5), 6) - 1) < CTX.ldexp(1, -120)


def test_geo_term_iterative_examples():
    assert abs(geo_term_iterative((2, 3, 5), 3) - CTX.cbrt(30)) < CTX.ldexp(1, -125)
    assert abs(geo_term_iterative((7, 7, 7), 50) - 7) < CTX.ldexp(1, -120)
    it = geo_term_iterative((2, 3, 5), 40)
    assert abs(it / geo_term_symbolic((2, 3, 5), 40) - 1) < CTX.ldexp(1, -64)


@pytest.mark.parametrize("bad", [(0, 1, 2), (1, -2, 3), ("-1/2", 1, 1)])
def test_nonpositive_init_rejected(bad):
    with pytest.raises(DomainError):
        geo_term_symbolic(bad, 4)
    with pytest.raises(DomainError):
        GeoInit(*bad)


def test_decimal_and_fraction_inits():
    init = GeoInit("0.5", Fraction(3, 2), "7/3")
    assert abs(geo_term_symbolic(init, 10) / geo_term_iterative(init, 10) - 1) < CTX.ldexp(1, -100)


def test_growth_ratio_examples():
    assert growth_ratio((5, 5, 5), 0) == 1
    assert growth_ratio(("3/7", "3/7", "3/7"), 33) == 1
    assert abs(growth_ratio((2, 3, 5), 2) - CTX.cbrt(30) / 5) < CTX.ldexp(1, -120)
    assert abs(growth_ratio((2, 3, 5), 60) - 1) < 1e-6


def test_ratio_weights_sum_to_zero():
    for n in range(100):
        assert sum(ratio_weights(n)) == 0


def test_ratio_weights_match_v_sequence_form():
    # exponent of a in g[n+3]/g[n+2] is (T[n+2] - 3 T[n+1]) / 3**(n+1)
    for n in range(1, 60):
        w = ratio_weights(n + 2)
        assert w[0] == Fraction(t_sequence(n + 2) - 3 * t_sequence(n + 1), 3 ** (n + 1))
        assert w[1] == Fraction(t_sequence(n + 2) - 9 * t_sequence(n), 3 ** (n + 1))
        assert w[2] == Fraction(t_sequence(n + 3) - 3 * t_sequence(n + 2), 3 ** (n + 1))


def test_convergence_report_examples():
    rep = growth_convergence_report((4, 4, 4), 5, Fraction(1, 10**12))
    assert rep.crossing == 0 and rep.trace[0][1] == 1
    rep = growth_convergence_report((2, 3, 5), 40, Fraction(1, 1000))
    assert rep.crossing <= 25
    assert len(rep.trace) == 41
    rep = growth_convergence_report((1, 1, 10**6), 120, Fraction(1, 1000))
    assert rep.crossing <= 120
    # the ratio at n = 0 is b/a = 1; the first non-trivial crossing is later
    later = [n for n, _, d in rep.trace if n > 0 and d < 1e-3]
    assert later and later[0] <= 120


def test_convergence_report_raises():
    with pytest.raises(NoConvergence):
        growth_convergence_report((2, 3, 5), 3, Fraction(1, 10**9))
    with pytest.raises(ValueError):
        growth_convergence_report((2, 3, 5), 3, 0)


def test_deviation_envelope():
    rho = mpmath.sqrt(3) / 3
    for init in ((2, 3, 5), (1, 1, 10**6), ("1/7", 9, 2)):
        rep = growth_convergence_report(init, 80, Fraction(1, 10**15), 256)
        norm = [d / rho**n for n, _, d in rep.trace]
        fitted = max(norm[:41])
        assert max(norm[41:]) <= fitted * 1.01


positive = st.fractions(min_value=Fraction(1, 50), max_value=50, max_denominator=50)


@settings(max_examples=25, deadline=None)
@given(positive, positive, positive, st.integers(0, 60))
def test_symbolic_matches_iteration(a, b, c, n):
    sym = geo_term_symbolic((a, b, c), n)
    it = geo_term_iterative((a, b, c), n)
    assert abs(it / sym - 1) < CTX.ldexp(1, -64)


@settings(max_examples=15, deadline=None)
@given(positive, st.integers(0, 80))
def test_constant_init_ratio_is_exactly_one(k, n):
    assert growth_ratio((k, k, k), n) == 1
