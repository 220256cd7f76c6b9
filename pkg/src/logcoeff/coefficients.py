"""Logarithmic coefficients and the pre-Schwarzian recurrences.

``log(f(z)/z) = 2 sum gamma_n z^n``, ``1 + zf''/f' = sum beta_n z^n`` and
``zf'/f = sum delta_n z^n`` with ``delta_n = 2 n gamma_n``.

:func:`gamma_from_beta` is an independent route to ``gamma_1 .. gamma_5``
through the coefficient identities obtained from
``(zf'/f)(1 + zf''/f') = (zf'/f)^2 + z (zf'/f)'``; comparing it with
:func:`log_coefficients` catches errors in either path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .series import EXACT, FLOAT, Series, SeriesError, log_unit

WEIGHTS = ("ones", "n_squared", "n_plus_1_pow_t", "roth_p_n")


class NormalizationError(SeriesError):
    pass


def _check_normalized(f: Series) -> None:
    if f.order < 1:
        raise NormalizationError("f needs order >= 1")
    a0, a1 = f[0], f[1]
    if f.backend == EXACT:
        ok = a0 == 0 and a1 == 1
    else:
        ok = abs(a0) < 1e-12 and abs(a1 - 1) < 1e-12
    if not ok:
        raise NormalizationError(f"f must satisfy f(0) = 0, f'(0) = 1 (got a_0={a0}, a_1={a1})")


@dataclass(frozen=True)
class GammaVector:
    """``gamma_1 .. gamma_N``; ``values[n - 1]`` is ``gamma_n``."""

    values: tuple
    backend: str
    source: str = ""

    def __post_init__(self):
        if len(self.values) < 1:
            raise ValueError("GammaVector needs at least gamma_1")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n: int):
        """1-based access: ``g[n]`` is ``gamma_n``."""
        if not 1 <= n <= len(self.values):
            raise IndexError(f"gamma_{n} outside 1..{len(self.values)}")
        return self.values[n - 1]

    @property
    def N(self) -> int:
        return len(self.values)

    def moduli(self) -> np.ndarray:
        return np.abs(np.array([complex(v) for v in self.values]))

    def abs_exact(self, n: int):
        """``|gamma_n|``, exact when the value is a real rational."""
        v = self[n]
        return abs(v) if isinstance(v, Fraction) else abs(complex(v))

    def to_json_list(self) -> list:
        if self.backend == EXACT:
            return [str(v) for v in self.values]
        return [[complex(v).real, complex(v).imag] for v in self.values]

    def to_json(self) -> str:
        return json.dumps(self.to_json_list())

    @classmethod
    def from_json_list(cls, items: list, source: str = "") -> "GammaVector":
        if all(isinstance(v, str) for v in items):
            return cls(tuple(Fraction(v) for v in items), EXACT, source)
        return cls(tuple(complex(re, im) for re, im in items), FLOAT, source)

    @classmethod
    def from_json(cls, text: str, source: str = "") -> "GammaVector":
        return cls.from_json_list(json.loads(text), source)


@dataclass(frozen=True)
class BetaDelta:
    """``beta_1 .. beta_N`` of ``1 + zf''/f'`` and ``delta_1 .. delta_N`` of ``zf'/f``."""

    beta: tuple
    delta: tuple
    backend: str = EXACT


def log_coefficients(f: Series, N: int | None = None, source: str = "") -> GammaVector:
    """``gamma_1 .. gamma_N`` of ``f``; ``f`` must be known to order ``N + 1``."""
    _check_normalized(f)
    if N is None:
        N = f.order - 1
    if N < 1 or N > f.order - 1:
        raise SeriesError(f"N={N} needs f to order N + 1 (have {f.order})")
    g = f.shift_down().truncate(N)
    L = log_unit(g)
    half = Fraction(1, 2) if f.backend == EXACT else 0.5
    vals = tuple(L[n] * half for n in range(1, N + 1))
    return GammaVector(vals, f.backend, source)


def pre_schwarzian_coeffs(f: Series, N: int | None = None) -> BetaDelta:
    """``beta_n`` from ``1 + z (log f')'`` and ``delta_n = 2 n gamma_n``."""
    _check_normalized(f)
    if N is None:
        N = f.order - 1
    if N < 1 or N > f.order - 1:
        raise SeriesError(f"N={N} needs f to order N + 1 (have {f.order})")
    fp = f.derivative().truncate(N)
    ell = log_unit(fp)
    beta = tuple(n * ell[n] for n in range(1, N + 1))
    gam = log_coefficients(f, N)
    delta = tuple(2 * n * gam[n] for n in range(1, N + 1))
    return BetaDelta(beta, delta, f.backend)


def gamma_from_beta(bd: BetaDelta | Sequence) -> tuple:
    """``gamma_1 .. gamma_5`` from ``beta_1 .. beta_5`` alone.

    Uses ``gamma_1 = beta_1/4``, ``gamma_2 = (beta_2 + beta_1^2/4)/12``,
    ``gamma_3 = (beta_3 + beta_1 beta_2/2)/24`` and then

    ``5 delta_4 = beta_4 + beta_3 delta_1 + beta_2 delta_2 - delta_2^2``,
    ``6 delta_5 = beta_5 + beta_4 delta_1 + delta_2 (beta_3 - delta_3) + delta_3 (beta_2 - delta_2)``.
    """
    beta = bd.beta if isinstance(bd, BetaDelta) else tuple(bd)
    if len(beta) < 5:
        raise ValueError(f"need beta_1 .. beta_5, got {len(beta)} values")
    b1, b2, b3, b4, b5 = beta[:5]
    exact = all(isinstance(b, (Fraction, int)) for b in (b1, b2, b3, b4, b5))
    one = Fraction(1) if exact else 1.0
    g1 = b1 * one / 4
    g2 = (b2 + b1 * b1 * one / 4) / 12
    g3 = (b3 + b1 * b2 * one / 2) / 24
    d1, d2, d3 = 2 * g1, 4 * g2, 6 * g3
    d4 = (b4 + b3 * d1 + b2 * d2 - d2 * d2) / 5
    d5 = (b5 + b4 * d1 + d2 * (b3 - d3) + d3 * (b2 - d2)) / 6
    return (g1, g2, g3, d4 / 8, d5 / 10)


@dataclass(frozen=True)
class EnergyTrajectory:
    """Partial sums ``S_k = sum_{n<=k} w_n |gamma_n|^2`` for ``k = 1 .. N``."""

    weight: str
    partial_sums: tuple
    t: float | None = None
    outside_hypothesis: bool = False
    note: str = field(default="", compare=False)

    @property
    def total(self):
        return self.partial_sums[-1]


def energy_weights(weight: str, N: int, t: float | None = None, exact: bool = False) -> list:
    """``w_1 .. w_N`` for the named weight."""
    if weight not in WEIGHTS:
        raise ValueError(f"unknown weight {weight!r}; expected one of {WEIGHTS}")
    ns = range(1, N + 1)
    if weight == "ones":
        return [Fraction(1) if exact else 1.0 for _ in ns]
    if weight == "n_squared":
        return [Fraction(n * n) if exact else float(n * n) for n in ns]
    if weight == "roth_p_n":
        return [Fraction(n, n + 1) ** 2 if exact else (n / (n + 1)) ** 2 for n in ns]
    if t is None:
        raise ValueError("weight n_plus_1_pow_t needs t")
    if exact and isinstance(t, Fraction) and t.denominator == 1:
        return [Fraction(n + 1) ** int(t) for n in ns]
    return [float(n + 1) ** float(t) for n in ns]


def weighted_energy(gamma: GammaVector, weight: str = "ones", t: float | None = None) -> EnergyTrajectory:
    """Trajectory of weighted energies ``sum w_n |gamma_n|^2``.

    Exact when every ``gamma_n`` is a real rational and the weight is rational.
    ``t > 2`` is outside the hypothesis of the ``(n+1)^t`` inequality; the sums
    are still returned but flagged.
    """
    exact = gamma.backend == EXACT and all(isinstance(v, Fraction) for v in gamma.values)
    if t is not None and not isinstance(t, Fraction):
        t = Fraction(t) if isinstance(t, int) else float(t)
    w = energy_weights(weight, gamma.N, t, exact=exact)
    outside = weight == "n_plus_1_pow_t" and t is not None and t > 2
    if exact and all(isinstance(x, Fraction) for x in w):
        acc, sums = Fraction(0), []
        for wn, g in zip(w, gamma.values):
            acc += wn * g * g
            sums.append(acc)
        return EnergyTrajectory(weight, tuple(sums), t, outside)
    mod2 = gamma.moduli() ** 2
    sums = np.cumsum(np.asarray(w, dtype=float) * mod2)
    note = "t > 2: outside hypothesis" if outside else ""
    return EnergyTrajectory(weight, tuple(float(x) for x in sums), t, outside, note)
