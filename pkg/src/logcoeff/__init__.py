"""Logarithmic coefficients of univalent-function classes."""

__version__ = "0.1.0"

from .series import Series, compose, exp_zero, integrate_over_t, log_unit, mul, pow
from .classes import (
    ClassSpec,
    SchwarzFn,
    coefficients_of,
    extremal_series,
    member_from_schwarz,
    schwarz_from_coefficients,
    schwarz_from_schur,
)
from .coefficients import (
    BetaDelta,
    GammaVector,
    gamma_from_beta,
    log_coefficients,
    pre_schwarzian_coeffs,
    weighted_energy,
)
from .bounds import (
    BoundValue,
    a_n_alpha,
    dilog,
    energy_bound,
    gamma_bound,
    gamma_bounds,
    i_envelope,
    ps_phi,
)
from .explorer import conjecture_report, ps_oracle, search_extremal, verify_bounds
