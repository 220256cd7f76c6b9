import cmath
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from logcoeff.bounds import a_n_alpha
from logcoeff.classes import ClassSpec, extremal_series, member_from_schwarz, schwarz_from_schur, schwarz_monomial
from logcoeff.coefficients import (
    GammaVector,
    NormalizationError,
    energy_weights,
    gamma_from_beta,
    log_coefficients,
    pre_schwarzian_coeffs,
    weighted_energy,
)
from logcoeff.series import EXACT, FLOAT, Series, SeriesError, div

exact_lambda = st.fractions(min_value=-1, max_value=1, max_denominator=8)
disk_lambda = st.builds(
    lambda r, t: r * cmath.exp(1j * t),
    st.floats(min_value=0, max_value=1),
    st.floats(min_value=-math.pi, max_value=math.pi),
)


def test_koebe():
    g = log_coefficients(extremal_series(ClassSpec.janowski(1, -1), 20))
    assert g.values == tuple(Fraction(1, n) for n in range(1, 21))


def test_f3_closed_form():
    g = log_coefficients(extremal_series(ClassSpec.F(3), 12))
    assert g.values == tuple((1 - Fraction(1, 2 ** (k + 1))) / k for k in range(1, 13))


def test_needs_enough_order():
    f = extremal_series(ClassSpec.F(3), 5)
    with pytest.raises(SeriesError):
        log_coefficients(f, 6)
    assert log_coefficients(f).N == 5


def test_normalization_enforced():
    with pytest.raises(NormalizationError):
        log_coefficients(Series([0, 2, 1]))
    with pytest.raises(NormalizationError):
        log_coefficients(Series([1, 1, 1]))


def test_spiral_member_against_closed_form():
    # phi = z: log(f/z) = -k log(1 - z), so gamma_n = k/(2n)
    alpha, beta = 0.6, 0.3
    k = 2 * (1 - beta) * cmath.exp(1j * alpha) * math.cos(alpha)
    f = member_from_schwarz(ClassSpec.spiral(alpha, beta), schwarz_monomial(1, 15, FLOAT), 15)
    g = log_coefficients(f)
    assert np.allclose(np.array(g.values), [k / (2 * n) for n in range(1, 16)], atol=1e-13)


@pytest.mark.parametrize("alpha", [Fraction(1, 3), Fraction(1, 2), Fraction(4, 5)])
def test_strongly_starlike_extremal_against_mpmath(alpha):
    # 2 n gamma_n is the n-th coefficient of ((1+z)/(1-z))^alpha
    mpmath.mp.dps = 30
    a = mpmath.mpf(alpha.numerator) / alpha.denominator
    ref = mpmath.taylor(lambda t: ((1 + t) / (1 - t)) ** a, 0, 10)
    g = log_coefficients(extremal_series(ClassSpec.strongly_starlike(alpha), 10, FLOAT))
    for n in range(1, 11):
        assert abs(complex(g[n]) * 2 * n - float(ref[n])) < 1e-12
        assert abs(float(a_n_alpha(n, alpha)) - float(ref[n])) < 1e-12


def test_pre_schwarzian_of_fc_is_constant():
    for c in (Fraction(1, 2), Fraction(2), Fraction(3)):
        bd = pre_schwarzian_coeffs(extremal_series(ClassSpec.F(c), 8))
        assert bd.beta == (c,) * 8


def test_gamma_from_beta_on_f3():
    assert gamma_from_beta([3] * 5) == tuple((1 - Fraction(1, 2 ** (k + 1))) / k for k in range(1, 6))


def test_gamma_from_beta_needs_five():
    with pytest.raises(ValueError):
        gamma_from_beta([1, 2, 3])


@settings(max_examples=40, deadline=None)
@given(st.lists(exact_lambda, min_size=1, max_size=5), st.sampled_from(["F", "G"]), st.integers(1, 12))
def test_beta_route_matches_log_route_exact(lams, kind, k):
    spec = ClassSpec.F(Fraction(k, 4)) if kind == "F" else ClassSpec.G(Fraction(k, 12))
    f = member_from_schwarz(spec, schwarz_from_schur(lams, 5), 5)
    bd = pre_schwarzian_coeffs(f)
    assert gamma_from_beta(bd) == log_coefficients(f).values


@settings(max_examples=40, deadline=None)
@given(st.lists(disk_lambda, min_size=1, max_size=5), st.floats(min_value=0.05, max_value=3))
def test_beta_route_matches_log_route_float(lams, c):
    f = member_from_schwarz(ClassSpec.F(c), schwarz_from_schur(lams, 5, FLOAT), 5)
    got = np.array(gamma_from_beta(pre_schwarzian_coeffs(f)))
    assert np.allclose(got, np.array(log_coefficients(f).values), atol=1e-10, rtol=0)


@settings(max_examples=40, deadline=None)
@given(st.lists(exact_lambda, min_size=1, max_size=4))
def test_delta_is_coefficient_of_zfp_over_f(lams):
    f = member_from_schwarz(ClassSpec.janowski(1, Fraction(-1, 2)), schwarz_from_schur(lams, 7), 7)
    zfp_over_f = div(f.derivative(), f.shift_down())
    bd = pre_schwarzian_coeffs(f)
    assert bd.delta == zfp_over_f.coeffs[1:]


def test_gamma_vector_is_one_based():
    g = GammaVector((Fraction(1), Fraction(1, 2)), EXACT)
    assert g[1] == 1 and g[2] == Fraction(1, 2)
    with pytest.raises(IndexError):
        g[0]
    with pytest.raises(IndexError):
        g[3]


def test_gamma_vector_json_roundtrip():
    ex = log_coefficients(extremal_series(ClassSpec.F(Fraction(5, 2)), 6))
    assert GammaVector.from_json(ex.to_json()).values == ex.values
    fl = log_coefficients(extremal_series(ClassSpec.spiral(0.3, 0.2), 6))
    back = GammaVector.from_json(fl.to_json())
    assert back.backend == FLOAT and back.values == fl.values


def test_energy_exact_partial_sums():
    g = log_coefficients(extremal_series(ClassSpec.janowski(1, -1), 6))
    tr = weighted_energy(g, "ones")
    assert tr.partial_sums == tuple(sum(Fraction(1, n * n) for n in range(1, k + 1)) for k in range(1, 7))
    assert weighted_energy(g, "n_squared").total == 6
    assert weighted_energy(g, "roth_p_n").total == sum(Fraction(1, (n + 1) ** 2) for n in range(1, 7))


def test_energy_weight_t():
    g = log_coefficients(extremal_series(ClassSpec.janowski(1, -1), 4))
    tr = weighted_energy(g, "n_plus_1_pow_t", 1)
    assert tr.total == sum(Fraction(n + 1, n * n) for n in range(1, 5))
    assert not tr.outside_hypothesis
    far = weighted_energy(g, "n_plus_1_pow_t", 2.5)
    assert far.outside_hypothesis and "outside" in far.note
    assert math.isclose(far.total, sum((n + 1) ** 2.5 / n**2 for n in range(1, 5)))


def test_energy_weights_validation():
    with pytest.raises(ValueError):
        energy_weights("cubes", 3)
    with pytest.raises(ValueError):
        energy_weights("n_plus_1_pow_t", 3)


@settings(max_examples=30, deadline=None)
@given(st.lists(disk_lambda, min_size=1, max_size=6))
def test_energy_trajectory_is_nondecreasing(lams):
    f = member_from_schwarz(ClassSpec.G(1), schwarz_from_schur(lams, 12, FLOAT), 12)
    s = np.array(weighted_energy(log_coefficients(f), "n_squared").partial_sums)
    assert np.all(np.diff(s) >= -1e-15)
