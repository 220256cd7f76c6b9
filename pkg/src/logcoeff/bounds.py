"""Closed-form coefficient bounds for the supported classes.

Each bound is returned as a :class:`BoundValue` that records whether the
inequality is proven or conjectural, whether an extremal function attains it,
and whether the class parameters satisfy its hypotheses. Bounds whose
hypotheses fail come back with ``applicable=False`` and a reason instead of
raising, so tables can show them.

Citation tags name the inequality by what it bounds:

=====================  =========================================================
janowski               |gamma_n| <= (A - B)/(2n)
janowski-B0            |gamma_n| <= A/(2n) (B = 0)
janowski-energy        sum |gamma_n|^2 <= ((A - B)/(2B))^2 Li2(B^2)  (A^2/4 at B = 0)
janowski-weighted      sum (n+1)^t |gamma_n|^2, t <= 2
janowski-n2            sum n^2 |gamma_n|^2 <= (A - B)^2 / (4 (1 - B^2))
spiral, spiral-energy  (1 - beta) cos(alpha)/n and its square-sum
sstar, sstar-energy    alpha/n and (1/4) sum |A_n(alpha)|^2/n^2
F-sharp                c/4, (4c + c^2)/48, (2c + c^2)/48
F-gamma4 / F-gamma5    the two-branch bounds for n = 4, 5
G-sharp                c/4, c/12, c/24
G-prior                c/(2 (c + 1) n)
roth                   sum p_n |gamma_n|^2 <= sum p_n/n^2,  p_n = (n/(n+1))^2
conj-F3, conj-F3-energy, conj-G    conjectured bounds
=====================  =========================================================
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from scipy.special import zeta as hurwitz_zeta

from .classes import ClassSpec

PI2_6 = math.pi**2 / 6

# Edges of the c-ranges for the gamma_4 / gamma_5 bounds of F(c).
# The D6 edges are exact; the D9 edges are roots of
# upsilon(c) = 2 mu (mu + 1)/(mu^2 + 2 mu + 4) kept as the published decimals.
C4_D6_MAX = Fraction(144, 55)
C4_D9_MIN = 2.71569
C5_D6_MAX = Fraction(80, 61)
C5_D9_MIN = 1.35541

PROVEN = "proven"
CONJECTURE = "conjecture"


class DomainError(ValueError):
    pass


class UncoveredRegionError(ValueError):
    """(mu, upsilon) lies outside the three regions with a closed-form bound."""

    def __init__(self, mu, upsilon, diagnostics):
        self.mu, self.upsilon, self.diagnostics = mu, upsilon, diagnostics
        super().__init__(f"(mu, upsilon) = ({mu}, {upsilon}) is not in D2, D6 or D9: {diagnostics}")


@dataclass(frozen=True)
class BoundValue:
    value: object
    sharp: bool
    applicable: bool
    citation: str
    status: str = PROVEN
    reason: str = ""
    branch: str = ""
    details: dict = field(default_factory=dict, compare=False)

    def as_float(self) -> float | None:
        return None if self.value is None else float(self.value)


def _na(citation: str, reason: str, status: str = PROVEN, **kw) -> BoundValue:
    return BoundValue(None, False, False, citation, status, reason, **kw)


# ---------------------------------------------------------------------------
# Dilogarithm


def _dilog_direct(x: float) -> float:
    # |x| <= 1/2: tail after n terms is below |x|^(n+1) / ((n+1)^2 (1 - |x|))
    total, p, n = 0.0, 1.0, 0
    ax = abs(x)
    while True:
        n += 1
        p *= x
        total += p / (n * n)
        if ax ** (n + 1) / ((n + 1) ** 2 * (1 - ax)) < 1e-17:
            return total


def dilog(x) -> float:
    """``Li2(x) = sum_{n>=1} x^n / n^2`` for real ``-1 <= x <= 1``."""
    x = float(x)
    if not -1.0 <= x <= 1.0:
        raise DomainError(f"dilog needs |x| <= 1, got {x}")
    if x == 1.0:
        return PI2_6
    if x == -1.0:
        return -PI2_6 / 2
    if x == 0.0:
        return 0.0
    if abs(x) <= 0.5:
        return _dilog_direct(x)
    if x > 0:
        return PI2_6 - math.log(x) * math.log1p(-x) - dilog(1 - x)
    return dilog(x * x) / 2 - dilog(-x)


def dilog_ratio(x) -> float:
    """``Li2(x)/x`` with the value 1 at ``x = 0``."""
    return 1.0 if x == 0 else dilog(x) / float(x)


# ---------------------------------------------------------------------------
# Strongly starlike coefficients


def gen_binom(a, k: int):
    """Generalized binomial coefficient ``binom(a, k)``."""
    out = Fraction(1) if isinstance(a, (int, Fraction)) else 1.0
    for j in range(k):
        out = out * (a - j) / (j + 1)
    return out


def a_n_alpha(n: int, alpha):
    """``A_n(alpha) = sum_{k=1}^n binom(n-1, k-1) binom(alpha, k) 2^k``, the
    coefficients of ``((1 + z)/(1 - z))^alpha = 1 + sum A_n z^n``."""
    if n < 1:
        raise DomainError("A_n(alpha) needs n >= 1")
    if isinstance(alpha, int):
        alpha = Fraction(alpha)
    return sum(math.comb(n - 1, k - 1) * gen_binom(alpha, k) * 2**k for k in range(1, n + 1))


def sstar_coeffs(alpha: float, n_max: int) -> list[float]:
    """``A_1 .. A_{n_max}`` by ``(n+1) A_{n+1} = 2 alpha A_n + (n-1) A_{n-1}``.

    The recurrence follows from ``(1 - z^2) p' = 2 alpha p``; unlike the
    binomial sum it is stable for large ``n``.
    """
    a = float(alpha)
    out = [0.0] * (n_max + 1)
    prev, cur = 1.0, 2 * a
    out[1] = cur
    for n in range(1, n_max):
        prev, cur = cur, (2 * a * cur + (n - 1) * prev) / (n + 1)
        out[n + 1] = cur
    return out[1:]


@lru_cache(maxsize=64)
def sstar_energy_sum(alpha: float, n_terms: int = 1 << 18) -> float:
    """``sum_{n>=1} A_n(alpha)^2 / n^2``.

    Direct summation to ``n_terms`` plus the tail of the leading asymptotic
    ``A_n ~ 2^alpha n^(alpha - 1) / Gamma(alpha)`` summed with the Hurwitz zeta.
    """
    a = float(alpha)
    if a == 1.0:
        return 4 * PI2_6
    A = sstar_coeffs(a, n_terms)
    total = math.fsum(A[n - 1] ** 2 / (n * n) for n in range(1, n_terms + 1))
    lead = 2**a / math.gamma(a)
    total += lead**2 * float(hurwitz_zeta(4 - 2 * a, n_terms + 1))
    return total


# ---------------------------------------------------------------------------
# The Prokhorov-Szynal functional


def _in_d2(m, u, eps):
    return 0.5 - eps <= m <= 2 + eps and (4 / 27) * (m + 1) ** 3 - (m + 1) - eps <= u <= 1 + eps


def _in_d6(m, u, eps):
    return 2 - eps <= m <= 4 + eps and u >= (m * m + 8) / 12 - eps


def _in_d9(m, u, eps):
    return m >= 2 - eps and -(2 / 3) * (m + 1) - eps <= u <= 2 * m * (m + 1) / (m * m + 2 * m + 4) + eps


def _d9_value(m, u):
    return (2 / 3) * (m + 1) * math.sqrt((m + 1) / (3 * (m + 1 + u)))


def ps_regions(mu, upsilon, eps: float = 1e-12) -> list[str]:
    m, u = abs(float(mu)), float(upsilon)
    return [name for name, test in (("D2", _in_d2), ("D6", _in_d6), ("D9", _in_d9)) if test(m, u, eps)]


def ps_phi(mu, upsilon, eps: float = 1e-12) -> tuple[float, str]:
    """Sharp bound of ``|c_3 + mu c_1 c_2 + upsilon c_1^3|`` over Schwarz functions.

    Covers the regions D2 (value 1), D6 (value ``|upsilon|``) and D9; anything
    else raises :class:`UncoveredRegionError`. Where regions overlap their
    values must agree.
    """
    m, u = abs(float(mu)), float(upsilon)
    regions = ps_regions(mu, upsilon, eps)
    if not regions:
        diag = {
            "|mu|": m,
            "D2": f"needs 1/2 <= |mu| <= 2 and {(4 / 27) * (m + 1) ** 3 - (m + 1):.6g} <= upsilon <= 1",
            "D6": f"needs 2 <= |mu| <= 4 and upsilon >= {(m * m + 8) / 12:.6g}",
            "D9": f"needs |mu| >= 2 and {-(2 / 3) * (m + 1):.6g} <= upsilon <= {2 * m * (m + 1) / (m * m + 2 * m + 4):.6g}",
        }
        raise UncoveredRegionError(mu, upsilon, diag)
    values = {"D2": 1.0, "D6": abs(u)}
    vals = [(values[r] if r != "D9" else _d9_value(m, u), r) for r in regions]
    v0 = vals[0][0]
    for v, r in vals[1:]:
        if abs(v - v0) > 1e-9:
            raise AssertionError(f"regions {vals[0][1]} and {r} disagree at ({mu}, {upsilon}): {v0} vs {v}")
    return vals[0]


# ---------------------------------------------------------------------------
# Envelopes for gamma_4, gamma_5 of F(c)


def _mu_upsilon(c, which):
    if which == "I2":
        return 2 + c / 18, 1 + c / 18 - c * c / 72
    if which == "I3":
        return 2 + c / 10, 1 + c / 10 - c * c / 20
    raise ValueError(f"which must be 'I2' or 'I3', got {which!r}")


def i_envelope(c, which: str) -> BoundValue:
    """Upper bound of ``|I_2|`` or ``|I_3|`` with the region branch that applies."""
    c = Fraction(c) if isinstance(c, int) else c
    if not 0 < c <= 3:
        raise DomainError("c must lie in (0, 3]")
    mu, ups = _mu_upsilon(c, which)
    d6_max, d9_min = (C4_D6_MAX, C4_D9_MIN) if which == "I2" else (C5_D6_MAX, C5_D9_MIN)
    details = {"mu": mu, "upsilon": ups}
    if c <= d6_max:
        return BoundValue(abs(ups), True, True, f"envelope-{which}", branch="D6", details=details)
    if c > d9_min:
        cf = float(c)
        if which == "I2":
            v = (54 + cf) / 27 * math.sqrt(4 * (54 + cf) / (3 * (288 + 8 * cf - cf * cf)))
        else:
            v = (30 + cf) / 15 * math.sqrt(2 * (30 + cf) / (3 * (80 + 4 * cf - cf * cf)))
        return BoundValue(v, False, True, f"envelope-{which}", branch="D9", details=details)
    return _na(
        f"envelope-{which}",
        f"no bound established for c in ({float(d6_max):.5f}, {d9_min}]",
        details=details,
    )


def f_gamma4_poly(c):
    return (c + c * c / 18 * (13 + c / 2 - c * c / 8)) / 40


def f_gamma5_poly(c):
    return (c + c * c / 12 * (11 + c - c * c / 4)) / 60


def f_gamma4_i2(c, i2: float) -> float:
    c = float(c)
    return (c + 2 * c * c / 9 + c * c / 2 * i2) / 40


def f_gamma5_i3(c, i3: float) -> float:
    c = float(c)
    return (c + c * c / 2 + c**3 / 24 + 5 * c * c / 12 * i3) / 60


def _f_high(c, n: int) -> BoundValue:
    which = "I2" if n == 4 else "I3"
    cite = f"F-gamma{n}"
    env = i_envelope(c, which)
    if not env.applicable:
        lo, hi = (C4_D6_MAX, C4_D9_MIN) if n == 4 else (C5_D6_MAX, C5_D9_MIN)
        return _na(cite, f"no bound established for c in ({float(lo):.5f}, {hi}]", branch="gap")
    if env.branch == "D6":
        poly = f_gamma4_poly(c) if n == 4 else f_gamma5_poly(c)
        return BoundValue(poly, True, True, cite, branch="polynomial (D6)")
    val = f_gamma4_i2(c, env.value) if n == 4 else f_gamma5_i3(c, env.value)
    return BoundValue(val, False, True, cite, branch=f"|{which}| envelope (D9), not sharp", details={"I": env.value})


# ---------------------------------------------------------------------------
# Per-index bounds


def _janowski_hyp(spec: ClassSpec) -> str:
    A, B = spec.A, spec.B
    if isinstance(A, complex):
        return "outside theorem hypothesis: A is complex (needs real -1 <= B < A <= 1)"
    if not (-1 <= B < A <= 1):
        return "outside theorem hypothesis: needs -1 <= B < A <= 1"
    return ""


def conjecture_f3(n: int) -> Fraction:
    return (1 - Fraction(1, 2 ** (n + 1))) / n


def conjecture_g(c, n: int):
    return c / (2 * n * (n + 1))


def conjecture_f3_energy() -> float:
    return PI2_6 + dilog(0.25) / 4 - dilog(0.5)


def gamma_bounds(spec: ClassSpec, n: int) -> list[BoundValue]:
    """Every labeled bound for ``|gamma_n|`` of ``spec``; the first entry is the main one."""
    if n < 1:
        raise DomainError("n must be >= 1")
    k = spec.kind
    if k == "janowski":
        why = _janowski_hyp(spec)
        if why:
            return [_na("janowski", why)]
        A, B = spec.A, spec.B
        if B == 0:
            return [
                BoundValue(A / (2 * n), True, True, "janowski-B0"),
                _na("janowski", "B = 0 is handled by the B = 0 corollary"),
            ]
        return [BoundValue((A - B) / (2 * n), True, True, "janowski")]
    if k == "spiral":
        v = (1 - float(spec.beta)) * math.cos(float(spec.alpha)) / n
        return [BoundValue(v, True, True, "spiral")]
    if k == "strongly_starlike":
        return [BoundValue(spec.alpha / n, True, True, "sstar")]
    c = spec.c
    if k == "F":
        out = []
        if n == 1:
            out.append(BoundValue(c / 4, True, True, "F-sharp"))
        elif n == 2:
            out.append(BoundValue((4 * c + c * c) / 48, True, True, "F-sharp"))
        elif n == 3:
            out.append(BoundValue((2 * c + c * c) / 48, True, True, "F-sharp"))
        elif n in (4, 5):
            out.append(_f_high(c, n))
        if c == 3:
            conj = BoundValue(conjecture_f3(n), True, True, "conj-F3", CONJECTURE)
            out = out + [conj] if out else [conj]
        if not out:
            out.append(_na("F", f"no bound established for n = {n} when c != 3", CONJECTURE))
        return out
    # G(c)
    prior = BoundValue(c / (2 * (c + 1) * n), n == 1 and c == 1, True, "G-prior")
    conj = BoundValue(conjecture_g(c, n), True, True, "conj-G", CONJECTURE)
    if n <= 3:
        return [BoundValue(c / (2 * n * (n + 1)), True, True, "G-sharp"), prior, conj]
    return [conj, prior]


def gamma_bound(spec: ClassSpec, n: int) -> BoundValue:
    return gamma_bounds(spec, n)[0]


def proven_gamma_bounds(spec: ClassSpec, n: int) -> list[BoundValue]:
    return [b for b in gamma_bounds(spec, n) if b.applicable and b.status == PROVEN]


# ---------------------------------------------------------------------------
# Energy bounds


def _weighted_sum_geometric(t: float, b2: float) -> float:
    """``sum_{n>=1} (n+1)^t / n^2 * b2^(n-1)`` for ``0 <= b2 < 1``, ``t <= 2``.

    Consecutive terms shrink by at most ``b2`` when ``t <= 2``, so the tail
    after a term ``T`` is below ``T b2 / (1 - b2)``.
    """
    total, n = 0.0, 0
    while True:
        n += 1
        term = (n + 1) ** t / (n * n) * b2 ** (n - 1)
        total += term
        if term * b2 / (1 - b2) < 1e-16 * max(total, 1.0) or term == 0.0:
            return total


def _weighted_sum_unit(t: float, head: int = 16) -> float:
    """``sum_{n>=1} (n+1)^t / n^2`` for ``t < 1``.

    Beyond ``head`` the summand is expanded as ``sum_k binom(t, k) n^(t-2-k)``
    and each power summed with the Hurwitz zeta.
    """
    total = math.fsum((n + 1) ** t / (n * n) for n in range(1, head + 1))
    k, tail = 0, 0.0
    while True:
        term = float(gen_binom(t, k)) * float(hurwitz_zeta(2 - t + k, head + 1))
        tail += term
        if abs(term) < 1e-18 or k > 200:
            return total + tail
        k += 1


def energy_bound(spec: ClassSpec, weight: str = "ones", t=None) -> BoundValue:
    """Upper bound for ``sum w_n |gamma_n|^2`` with the named weight."""
    if weight == "roth_p_n":
        if spec.kind == "janowski" and _janowski_hyp(spec):
            return _na("roth", _janowski_hyp(spec))
        return BoundValue(PI2_6 - 1, spec.kind == "janowski" and spec.A == 1 and spec.B == -1, True, "roth")
    k = spec.kind
    if k == "janowski":
        why = _janowski_hyp(spec)
        A, B = spec.A, spec.B
        if weight == "ones":
            if why:
                return _na("janowski-energy", why)
            if B == 0:
                return BoundValue(A * A / 4, True, True, "janowski-energy")
            return BoundValue(float((A - B) / (2 * B)) ** 2 * dilog(float(B * B)), True, True, "janowski-energy")
        if weight == "n_squared":
            if why:
                return _na("janowski-n2", why)
            if B == -1:
                return _na("janowski-n2", "needs B != -1")
            return BoundValue((A - B) ** 2 / (4 * (1 - B * B)), False, True, "janowski-n2")
        if weight == "n_plus_1_pow_t":
            if t is None:
                raise ValueError("weight n_plus_1_pow_t needs t")
            if why:
                return _na("janowski-weighted", why)
            if t > 2:
                return _na("janowski-weighted", f"needs t <= 2, got t = {t}")
            t = float(t)
            b2 = float(B * B)
            pref = float(A - B) ** 2 / 4
            if b2 < 1:
                return BoundValue(pref * _weighted_sum_geometric(t, b2), t == 0, True, "janowski-weighted")
            if t >= 1:
                return BoundValue(math.inf, False, True, "janowski-weighted", reason="series diverges")
            return BoundValue(pref * _weighted_sum_unit(t), t == 0, True, "janowski-weighted")
        raise ValueError(f"unknown weight {weight!r}")
    if weight != "ones":
        return _na(f"{k}-energy", f"no {weight} energy bound for class {k}")
    if k == "spiral":
        v = PI2_6 * (1 - float(spec.beta)) ** 2 * math.cos(float(spec.alpha)) ** 2
        return BoundValue(v, True, True, "spiral-energy")
    if k == "strongly_starlike":
        return BoundValue(sstar_energy_sum(float(spec.alpha)) / 4, True, True, "sstar-energy")
    if k == "F" and spec.c == 3:
        return BoundValue(conjecture_f3_energy(), True, True, "conj-F3-energy", CONJECTURE)
    return _na(f"{k}-energy", f"no square-sum bound established for {spec.label()}")


def energy_bounds(spec: ClassSpec, t_values=(0, 1, 2)) -> dict:
    """Every energy bound of ``spec`` keyed by weight label."""
    out = {
        "ones": energy_bound(spec, "ones"),
        "n_squared": energy_bound(spec, "n_squared") if spec.kind == "janowski" else None,
        "roth_p_n": energy_bound(spec, "roth_p_n"),
    }
    if spec.kind == "janowski":
        for t in t_values:
            out[f"n_plus_1_pow_t:{t}"] = energy_bound(spec, "n_plus_1_pow_t", t)
    return {k: v for k, v in out.items() if v is not None}


# ---------------------------------------------------------------------------
# Tables

TABLE_COLUMNS = ("class", "params", "n", "bound", "sharp", "applicable", "citation", "status", "branch", "reason")


def _fmt_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, Fraction):
        return str(v)
    return repr(float(v))


def bound_table(spec: ClassSpec, n_max: int, include_energy: bool = True) -> list[dict]:
    rows = []
    for n in range(1, n_max + 1):
        for b in gamma_bounds(spec, n):
            rows.append(_row(spec, str(n), b))
    if include_energy:
        for label, b in energy_bounds(spec).items():
            rows.append(_row(spec, f"energy:{label}", b))
    return rows


def _row(spec, n, b: BoundValue) -> dict:
    return {
        "class": spec.kind,
        "params": spec.param_string(),
        "n": n,
        "bound": _fmt_value(b.value),
        "sharp": str(b.sharp).lower(),
        "applicable": str(b.applicable).lower(),
        "citation": b.citation,
        "status": b.status,
        "branch": b.branch,
        "reason": b.reason,
    }


def table_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
