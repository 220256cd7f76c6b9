import csv
import io
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st
from scipy.optimize import brentq

from logcoeff import bounds as B
from logcoeff.classes import ClassSpec, extremal_series
from logcoeff.coefficients import log_coefficients

PI2_6 = math.pi**2 / 6


# -- dilogarithm ---------------------------------------------------------------


@settings(max_examples=200)
@given(st.floats(min_value=-1, max_value=1))
def test_dilog_matches_mpmath(x):
    assert abs(B.dilog(x) - float(mpmath.polylog(2, x))) < 1e-14


def test_dilog_special_values():
    assert B.dilog(1) == PI2_6
    assert B.dilog(-1) == -PI2_6 / 2
    assert abs(B.dilog(0.5) - (PI2_6 / 2 - math.log(2) ** 2 / 2)) < 1e-15
    assert B.dilog_ratio(0) == 1.0


def test_dilog_domain():
    for x in (1.0001, -1.5, 3):
        with pytest.raises(B.DomainError):
            B.dilog(x)


@settings(max_examples=100)
@given(st.floats(min_value=0.01, max_value=0.99))
def test_dilog_reflection(x):
    lhs = B.dilog(x) + B.dilog(1 - x)
    assert abs(lhs - (PI2_6 - math.log(x) * math.log(1 - x))) < 1e-13


# -- strongly starlike coefficients -------------------------------------------


@pytest.mark.parametrize("alpha", [Fraction(1, 3), Fraction(1, 2), Fraction(1)])
def test_a_n_alpha_recurrence_matches_binomial_sum(alpha):
    rec = B.sstar_coeffs(float(alpha), 25)
    for n in range(1, 26):
        assert abs(float(B.a_n_alpha(n, alpha)) - rec[n - 1]) < 1e-9


def test_sstar_energy_sum_at_one():
    assert B.sstar_energy_sum(1.0) == 4 * PI2_6


def test_sstar_energy_sum_tail_correction():
    # the asymptotic tail makes a short direct sum agree with a long one
    short = B.sstar_energy_sum(0.5, 1 << 12)
    long = B.sstar_energy_sum(0.5, 1 << 18)
    assert abs(short - long) < 1e-9


def test_sstar_energy_sum_slope_at_one():
    # d/dalpha A_n at alpha = 1 is the n-th coefficient of p log p, p = (1+z)/(1-z)
    N = 200_000
    k = np.arange(1, N + 1)
    L = np.where(k % 2 == 1, 2.0 / k, 0.0)
    dA = L + 2 * np.concatenate([[0.0], np.cumsum(L)[:-1]])
    slope = 4 * np.sum(dA / k**2.0)
    slope += 8 * (math.log(N) + 2 + math.log(2) + np.euler_gamma) / N  # dA_n ~ 2 (log n + log 2 + gamma)
    h = 1e-6
    fd = (4 * PI2_6 - B.sstar_energy_sum(1 - h)) / h
    assert abs(fd - slope) < 1e-3


# -- Prokhorov-Szynal functional -------------------------------------------------


def test_ps_region_values():
    assert B.ps_phi(1, 1) == (1.0, "D2")
    assert B.ps_phi(3, Fraction(17, 12)) == (17 / 12, "D6")
    v, r = B.ps_phi(3, 0)
    assert r == "D9" and abs(v - 8 / (3 * math.sqrt(3))) < 1e-15


def test_ps_symmetric_in_sign_of_mu():
    assert B.ps_phi(-3, 0.5) == B.ps_phi(3, 0.5)


def test_ps_d6_d9_touch_at_two_one():
    assert set(B.ps_regions(2, 1)) >= {"D6", "D9"}
    assert abs(B.ps_phi(2, 1)[0] - 1) < 1e-12


@settings(max_examples=300)
@given(st.floats(min_value=0, max_value=6), st.floats(min_value=-5, max_value=5))
def test_ps_overlapping_regions_agree(mu, ups):
    try:
        B.ps_phi(mu, ups)
    except B.UncoveredRegionError as e:
        assert not B.ps_regions(mu, ups)
        assert set(e.diagnostics) == {"|mu|", "D2", "D6", "D9"}


def test_ps_uncovered():
    with pytest.raises(B.UncoveredRegionError):
        B.ps_phi(0, 5)


# -- F(c) gamma_4 / gamma_5 branches -------------------------------------------------


def _upsilon_edges(which):
    c = sp.Symbol("c", positive=True)
    if which == "I2":
        mu, ups = 2 + c / 18, 1 + c / 18 - c**2 / 72
    else:
        mu, ups = 2 + c / 10, 1 + c / 10 - c**2 / 20
    d6 = [r for r in sp.solve(sp.Eq(ups, (mu**2 + 8) / 12), c) if 0 < r <= 3]
    d9 = sp.lambdify(c, ups - 2 * mu * (mu + 1) / (mu**2 + 2 * mu + 4))
    return d6, brentq(d9, 0.5, 3)


def test_threshold_constants():
    d6, d9 = _upsilon_edges("I2")
    assert d6 == [sp.Rational(144, 55)] and B.C4_D6_MAX == Fraction(144, 55)
    assert abs(d9 - B.C4_D9_MIN) < 1e-5
    d6, d9 = _upsilon_edges("I3")
    assert d6 == [sp.Rational(80, 61)] and B.C5_D6_MAX == Fraction(80, 61)
    assert abs(d9 - B.C5_D9_MIN) < 1e-5


def test_polynomial_branch_is_envelope_branch_with_upsilon():
    c = sp.Symbol("c")
    u4 = 1 + c / 18 - c**2 / 72
    u5 = 1 + c / 10 - c**2 / 20
    assert sp.expand(B.f_gamma4_poly(c) - (c + 2 * c**2 / 9 + c**2 / 2 * u4) / 40) == 0
    assert sp.expand(B.f_gamma5_poly(c) - (c + c**2 / 2 + c**3 / 24 + 5 * c**2 / 12 * u5) / 60) == 0


def test_f3_gamma4_gamma5_values():
    b4 = B.gamma_bound(ClassSpec.F(3), 4)
    assert abs(b4.value - (5 + 9.5 * math.sqrt(76 / 303)) / 40) < 1e-15
    assert not b4.sharp and b4.branch.startswith("|I2|")
    b5 = B.gamma_bound(ClassSpec.F(3), 5)
    assert abs(b5.value - (69 / 8 + 33 / 4 * math.sqrt(22 / 83)) / 60) < 1e-15


@pytest.mark.parametrize("c, n", [(Fraction(27, 10), 4), (Fraction(27, 20), 5), (Fraction(4, 3), 5)])
def test_gap_is_not_applicable(c, n):
    b = B.gamma_bound(ClassSpec.F(c), n)
    assert not b.applicable and b.value is None and b.branch == "gap"


def test_f_beyond_five():
    assert not B.gamma_bound(ClassSpec.F(2), 6).applicable
    b = B.gamma_bound(ClassSpec.F(3), 6)
    assert b.status == B.CONJECTURE and b.value == B.conjecture_f3(6)


def test_i_envelope_domain():
    with pytest.raises(B.DomainError):
        B.i_envelope(Fraction(7, 2), "I2")
    with pytest.raises(ValueError):
        B.i_envelope(1, "I4")


# -- per-index bounds and sharpness --------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(
    st.fractions(min_value=-1, max_value=0, max_denominator=6),
    st.fractions(min_value=0, max_value=1, max_denominator=6),
    st.integers(min_value=1, max_value=6),
)
def test_janowski_extremal_attains_bound(b, a, n):
    if a <= b:
        return
    spec = ClassSpec.janowski(a, b, twist=n)
    g = log_coefficients(extremal_series(spec, n))
    assert abs(g[n]) == B.gamma_bound(spec, n).value


def test_janowski_complex_A_outside_hypothesis():
    b = B.gamma_bound(ClassSpec.janowski(complex(0.5, 0.5), -1), 2)
    assert not b.applicable and "complex" in b.reason


def test_janowski_B_zero_uses_corollary():
    b = B.gamma_bounds(ClassSpec.janowski(Fraction(1, 2), 0), 3)
    assert b[0].citation == "janowski-B0" and b[0].value == Fraction(1, 12)
    assert not b[1].applicable


def test_G_main_bound_switches_to_conjecture():
    spec = ClassSpec.G(Fraction(1, 2))
    assert B.gamma_bound(spec, 3).citation == "G-sharp"
    main, prior = B.gamma_bounds(spec, 4)
    assert main.status == B.CONJECTURE and main.value == Fraction(1, 80)
    assert prior.status == B.PROVEN and prior.value == Fraction(1, 24)


def test_sstar_and_spiral_values():
    assert B.gamma_bound(ClassSpec.strongly_starlike(Fraction(1, 2)), 5).value == Fraction(1, 10)
    v = B.gamma_bound(ClassSpec.spiral(math.pi / 3, 0.5), 2).value
    assert abs(v - 0.125) < 1e-15


def test_n_must_be_positive():
    with pytest.raises(B.DomainError):
        B.gamma_bounds(ClassSpec.F(1), 0)


# -- energy bounds -----------------------------------------------------------------------


def test_energy_bounds_janowski():
    koebe = ClassSpec.janowski(1, -1)
    assert B.energy_bound(koebe).value == PI2_6
    assert B.energy_bound(koebe, "roth_p_n").value == PI2_6 - 1
    assert B.energy_bound(ClassSpec.janowski(Fraction(1, 2), 0)).value == Fraction(1, 16)
    assert not B.energy_bound(koebe, "n_squared").applicable
    assert B.energy_bound(ClassSpec.janowski(1, Fraction(-1, 2)), "n_squared").value == Fraction(3, 4)
    assert math.isinf(B.energy_bound(koebe, "n_plus_1_pow_t", 1).value)
    assert not B.energy_bound(koebe, "n_plus_1_pow_t", 3).applicable


@pytest.mark.parametrize("t, b2", [(0.0, 0.25), (1.0, 0.25), (2.0, 0.81), (1.5, 0.0)])
def test_weighted_geometric_sum_against_mpmath(t, b2):
    ref = mpmath.nsum(lambda n: (n + 1) ** t / n**2 * mpmath.mpf(b2) ** (n - 1), [1, mpmath.inf])
    assert abs(B._weighted_sum_geometric(t, b2) - float(ref)) < 1e-12


@pytest.mark.parametrize("t", [0.0, 0.5, -1.0, 0.9])
def test_weighted_unit_sum_against_direct_sum(t):
    # direct sum plus the midpoint-integral tail of x^(t-2) (1 + t/x)
    N = 10**6
    n = np.arange(1, N + 1, dtype=float)
    M = N + 0.5
    ref = math.fsum((n + 1) ** t / n**2) + M ** (t - 1) / (1 - t) + t * M ** (t - 2) / (2 - t)
    assert abs(B._weighted_sum_unit(t) - ref) < 1e-9


def test_weighted_t0_reduces_to_dilog_bound():
    spec = ClassSpec.janowski(1, Fraction(-1, 2))
    assert abs(B.energy_bound(spec, "n_plus_1_pow_t", 0).value - B.energy_bound(spec).value) < 1e-14


def test_energy_bounds_keys():
    keys = set(B.energy_bounds(ClassSpec.janowski(1, -1)))
    assert keys == {"ones", "n_squared", "roth_p_n", "n_plus_1_pow_t:0", "n_plus_1_pow_t:1", "n_plus_1_pow_t:2"}
    assert set(B.energy_bounds(ClassSpec.G(1))) == {"ones", "roth_p_n"}


def test_f3_energy_conjecture_constant():
    assert abs(B.conjecture_f3_energy() - (PI2_6 + B.dilog(0.25) / 4 - B.dilog(0.5))) < 1e-15
    assert B.energy_bound(ClassSpec.F(3)).status == B.CONJECTURE


# -- tables --------------------------------------------------------------------


def test_bound_table_csv():
    rows = B.bound_table(ClassSpec.F(Fraction(27, 10)), 6)
    text = B.table_csv(rows)
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert tuple(parsed[0]) == B.TABLE_COLUMNS
    gap = [r for r in parsed if r["n"] == "4"][0]
    assert gap["applicable"] == "false" and gap["branch"] == "gap"
