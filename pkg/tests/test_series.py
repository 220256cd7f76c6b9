from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from logcoeff.series import (
    EXACT,
    FLOAT,
    BackendError,
    Series,
    SeriesError,
    compose,
    div,
    exp_zero,
    integrate_over_t,
    log_unit,
    mul,
    pow,
    reciprocal,
)

z = sp.Symbol("z")

small_frac = st.fractions(min_value=-3, max_value=3, max_denominator=6)


def unit_series(order):
    return st.lists(small_frac, min_size=order, max_size=order).map(lambda t: Series([1] + t, EXACT))


def zero_series(order):
    return st.lists(small_frac, min_size=order, max_size=order).map(lambda t: Series([0] + t, EXACT))


def sympy_coeffs(expr, order):
    poly = sp.series(expr, z, 0, order + 1).removeO()
    return [Fraction(str(sp.nsimplify(poly.coeff(z, k)))) for k in range(order + 1)]


def as_sympy(s: Series):
    return sum(sp.Rational(c.numerator, c.denominator) * z**k for k, c in enumerate(s.coeffs))


# -- construction ------------------------------------------------------------


def test_construction_pads_and_truncates():
    s = Series([1, 2], EXACT, order=4)
    assert s.coeffs == (1, 2, 0, 0, 0)
    assert Series([1, 2, 3, 4], EXACT, order=1).coeffs == (1, 2)
    assert Series(["1/3"], EXACT)[0] == Fraction(1, 3)


def test_exact_backend_rejects_floats():
    with pytest.raises(BackendError):
        Series([1, 0.5], EXACT)


def test_immutable():
    s = Series([1, 2], FLOAT)
    with pytest.raises(AttributeError):
        s.backend = EXACT
    with pytest.raises(ValueError):
        s.array()[0] = 5


def test_mixed_backends_refused():
    a = Series([1, 1], EXACT)
    b = Series([1, 1], FLOAT)
    with pytest.raises(BackendError):
        a + b
    with pytest.raises(BackendError):
        mul(a, b)
    with pytest.raises(BackendError):
        Series([1, 1, 1]) + Series([1, 1])


def test_geometric():
    assert Series.geometric(4, EXACT, Fraction(1, 2)).coeffs == tuple(Fraction(1, 2**k) for k in range(5))
    assert Series.geometric(3, FLOAT, 1j).allclose(Series([1, 1j, -1, -1j], FLOAT))


def test_derivative_and_antiderivative_orders():
    s = Series([1, 2, 3, 4], EXACT)
    assert s.derivative().coeffs == (2, 6, 12)
    a = s.antiderivative()
    assert a.order == 4 and a.coeffs == (0, 1, 1, 1, 1)
    assert a.derivative() == s


def test_shift_down_requires_zero_head():
    with pytest.raises(SeriesError):
        Series([1, 2, 3]).shift_down()
    assert Series([0, 0, 5]).shift_down(2).coeffs == (5,)


def test_rotate_float_only():
    with pytest.raises(BackendError):
        Series([0, 1]).rotate(0.3)
    r = Series([1, 1, 1], FLOAT).rotate(np.pi / 2)
    assert r.allclose(Series([1, 1j, -1], FLOAT))


# -- ring operations against numpy / sympy -------------------------------------


@given(st.lists(small_frac, min_size=1, max_size=9), st.lists(small_frac, min_size=1, max_size=9))
def test_mul_matches_numpy_convolve(a, b):
    n = max(len(a), len(b)) - 1
    A = Series(a, FLOAT, order=n)
    B = Series(b, FLOAT, order=n)
    ref = np.convolve(A.array(), B.array())[: n + 1]
    assert np.allclose(mul(A, B).array(), ref)
    assert mul(A, B).allclose(mul(Series(a, EXACT, order=n), Series(b, EXACT, order=n)).to_float())


def test_reciprocal_against_sympy():
    s = Series([2, -1, Fraction(1, 3), 5], EXACT)
    assert list(reciprocal(s).coeffs) == sympy_coeffs(1 / as_sympy(s), 3)
    with pytest.raises(SeriesError):
        reciprocal(Series([0, 1]))


def test_log_exp_against_sympy():
    s = Series([1, Fraction(1, 2), -2, Fraction(3, 4), 1, 0, 2], EXACT)
    assert list(log_unit(s).coeffs) == sympy_coeffs(sp.log(as_sympy(s)), 6)
    t = Series([0, 1, Fraction(-1, 3), 0, 2, 1, 0], EXACT)
    assert list(exp_zero(t).coeffs) == sympy_coeffs(sp.exp(as_sympy(t)), 6)


def test_pow_against_sympy():
    s = Series([1, 3, Fraction(-1, 2), 1, 0, 1], EXACT)
    e = Fraction(-2, 3)
    expr = as_sympy(s) ** sp.Rational(-2, 3)
    assert list(pow(s, e).coeffs) == sympy_coeffs(expr, 5)


def test_pow_exact_needs_rational_exponent():
    with pytest.raises(BackendError):
        pow(Series([1, 1]), 0.5)
    assert pow(Series([1, 1], FLOAT), 0.5).allclose(Series([1, 0.5], FLOAT))


def test_compose_against_sympy():
    outer = Series([1, 2, Fraction(-1, 2), 3, 0, 1], EXACT)
    inner = Series([0, Fraction(1, 3), 1, -1, 2, 0], EXACT)
    expr = as_sympy(outer).subs(z, as_sympy(inner))
    assert list(compose(outer, inner).coeffs) == sympy_coeffs(sp.expand(expr), 5)


def test_unit_and_zero_preconditions():
    with pytest.raises(SeriesError):
        log_unit(Series([2, 1]))
    with pytest.raises(SeriesError):
        exp_zero(Series([1, 1]))
    with pytest.raises(SeriesError):
        compose(Series([1, 1]), Series([1, 1]))
    with pytest.raises(SeriesError):
        integrate_over_t(Series([1, 1]))


def test_integrate_over_t():
    assert integrate_over_t(Series([0, 2, 3, 4])).coeffs == (0, 2, Fraction(3, 2), Fraction(4, 3))


# -- algebraic identities (exact backend) --------------------------------------


@settings(max_examples=60, deadline=None)
@given(unit_series(7))
def test_exp_log_roundtrip(s):
    assert exp_zero(log_unit(s)) == s


@settings(max_examples=60, deadline=None)
@given(unit_series(6), unit_series(6))
def test_log_of_product_is_sum(a, b):
    assert log_unit(mul(a, b)) == log_unit(a) + log_unit(b)


@settings(max_examples=40, deadline=None)
@given(unit_series(6))
def test_square_root_squares_back(s):
    r = pow(s, Fraction(1, 2))
    assert mul(r, r) == s


@settings(max_examples=40, deadline=None)
@given(unit_series(6), unit_series(6))
def test_div_inverts_mul(a, b):
    assert div(mul(a, b), b) == a


@settings(max_examples=40, deadline=None)
@given(zero_series(6), zero_series(6))
def test_compose_is_associative_with_exp(u, v):
    # exp(u(v)) = (exp u)(v)
    assert exp_zero(compose(u, v)) == compose(exp_zero(u), v)


@settings(max_examples=40, deadline=None)
@given(unit_series(8))
def test_float_backend_tracks_exact(s):
    ex = log_unit(s).to_float()
    fl = log_unit(s.to_float())
    assert ex.allclose(fl, 1e-9 * max(1.0, float(np.max(np.abs(ex.array())))))
