"""Function classes, Schwarz functions, and constructive class members.

Every class handled here is defined by a subordination of ``zf'/f`` or of
``1 + zf''/f'`` to a fixed target. A member is produced by composing the
target with a Schwarz function ``phi`` and integrating the resulting
logarithmic derivative:

* starlike-type classes (janowski, spiral, strongly starlike)::

      zf'/f = h(z) = target(phi(z)),   f = z * exp(int_0^z (h(t) - 1)/t dt)

* convexity-type classes ``F(c)`` and ``G(c)``::

      1 + zf''/f' = P(z) = 1 +/- c phi/(1 - phi),   f' = exp(int_0^z (P(t) - 1)/t dt)

Schwarz functions are built from Schur parameters so that ``|phi| <= 1`` on
the disk holds by construction.

Order convention: functions taking ``N`` return ``f`` truncated at order
``N + 1``, which is what ``log(f/z)`` needs for ``gamma_1 .. gamma_N``.
"""

from __future__ import annotations

import cmath
import json
import math
import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .series import (
    EXACT,
    FLOAT,
    BackendError,
    Series,
    compose,
    div,
    exp_zero,
    integrate_over_t,
    log_unit,
    pow as series_pow,
)

KINDS = ("janowski", "spiral", "strongly_starlike", "F", "G")
SCHUR_TOL = 1e-12


class ClassSpecError(ValueError):
    pass


class SchwarzError(ValueError):
    pass


def as_param(x):
    """Keep rationals exact (ints, Fractions, "p/q" strings); pass floats and complexes through."""
    if x is None:
        return None
    if isinstance(x, bool):
        raise ClassSpecError("boolean is not a parameter value")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, str):
        s = x.strip()
        try:
            return Fraction(s)
        except ValueError:
            try:
                return float(s)
            except ValueError:
                return complex(s.replace(" ", ""))
    if isinstance(x, numbers.Real):
        return float(x)
    if isinstance(x, numbers.Complex):
        z = complex(x)
        return z.real if z.imag == 0 else z
    raise ClassSpecError(f"unsupported parameter value {x!r}")


def _is_exact(x) -> bool:
    return isinstance(x, Fraction)


def _real(x) -> float:
    return float(x.real if isinstance(x, complex) else x)


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        return f"{x.real:g}{x.imag:+g}j"
    return f"{x:g}"


@dataclass(frozen=True)
class ClassSpec:
    """A function class with its parameters.

    ``twist`` is the n-fold symmetrization index used by extremal functions;
    ``theta`` rotates the driving variable of generated members
    (``phi(z) -> phi(e^{i theta} z)``, float backend only).
    """

    kind: str
    A: object = None
    B: object = None
    alpha: object = None
    beta: object = None
    c: object = None
    twist: int = 1
    theta: float = 0.0

    def __post_init__(self):
        for name in ("A", "B", "alpha", "beta", "c"):
            object.__setattr__(self, name, as_param(getattr(self, name)))
        if self.kind not in KINDS:
            raise ClassSpecError(f"unknown class kind {self.kind!r}; expected one of {KINDS}")
        if not isinstance(self.twist, numbers.Integral) or self.twist < 1:
            raise ClassSpecError("twist must be a positive integer")
        object.__setattr__(self, "twist", int(self.twist))
        object.__setattr__(self, "theta", float(self.theta))
        getattr(self, f"_validate_{self.kind}")()

    def _need(self, *names):
        for n in names:
            if getattr(self, n) is None:
                raise ClassSpecError(f"{self.kind} class needs parameter {n}")
        extra = {"A", "B", "alpha", "beta", "c"} - set(names)
        for n in extra:
            if getattr(self, n) is not None:
                raise ClassSpecError(f"{self.kind} class takes no parameter {n}")

    def _validate_janowski(self):
        self._need("A", "B")
        if isinstance(self.B, complex):
            raise ClassSpecError("B must be real")
        if not -1 <= self.B <= 0:
            raise ClassSpecError("janowski class needs -1 <= B <= 0")
        if self.A == self.B:
            raise ClassSpecError("janowski class needs A != B")

    def _validate_spiral(self):
        self._need("alpha", "beta")
        if not abs(_real(self.alpha)) < math.pi / 2 or isinstance(self.alpha, complex):
            raise ClassSpecError("spiral class needs real |alpha| < pi/2")
        if isinstance(self.beta, complex) or not 0 <= self.beta < 1:
            raise ClassSpecError("spiral class needs 0 <= beta < 1")

    def _validate_strongly_starlike(self):
        self._need("alpha")
        if isinstance(self.alpha, complex) or not 0 < self.alpha <= 1:
            raise ClassSpecError("strongly starlike class needs 0 < alpha <= 1")

    def _validate_F(self):
        self._need("c")
        if isinstance(self.c, complex) or not 0 < self.c <= 3:
            raise ClassSpecError("F(c) needs 0 < c <= 3")

    def _validate_G(self):
        self._need("c")
        if isinstance(self.c, complex) or not 0 < self.c <= 1:
            raise ClassSpecError("G(c) needs 0 < c <= 1")

    # -- factories ------------------------------------------------------------

    @classmethod
    def janowski(cls, A, B, twist: int = 1, theta: float = 0.0) -> "ClassSpec":
        return cls("janowski", A=A, B=B, twist=twist, theta=theta)

    @classmethod
    def spiral(cls, alpha, beta, twist: int = 1, theta: float = 0.0) -> "ClassSpec":
        return cls("spiral", alpha=alpha, beta=beta, twist=twist, theta=theta)

    @classmethod
    def strongly_starlike(cls, alpha, twist: int = 1, theta: float = 0.0) -> "ClassSpec":
        return cls("strongly_starlike", alpha=alpha, twist=twist, theta=theta)

    @classmethod
    def F(cls, c, twist: int = 1, theta: float = 0.0) -> "ClassSpec":
        return cls("F", c=c, twist=twist, theta=theta)

    @classmethod
    def G(cls, c, twist: int = 1, theta: float = 0.0) -> "ClassSpec":
        return cls("G", c=c, twist=twist, theta=theta)

    # -- properties -----------------------------------------------------------

    @property
    def params(self) -> dict:
        return {k: getattr(self, k) for k in ("A", "B", "alpha", "beta", "c") if getattr(self, k) is not None}

    @property
    def exact_capable(self) -> bool:
        """Whether members and extremals can be computed with rational arithmetic."""
        if self.kind == "spiral" or self.theta != 0.0:
            return False
        return all(_is_exact(v) for v in self.params.values())

    def default_backend(self) -> str:
        return EXACT if self.exact_capable else FLOAT

    def with_twist(self, twist: int) -> "ClassSpec":
        return ClassSpec(self.kind, **self.params, twist=twist, theta=self.theta)

    def label(self) -> str:
        inner = ", ".join(f"{k}={_fmt(v)}" for k, v in self.params.items())
        return f"{self.kind}({inner})"

    def param_string(self) -> str:
        return ";".join(f"{k}={_fmt(v)}" for k, v in self.params.items())

    # -- serialization ----------------------------------------------------------

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        for k, v in self.params.items():
            if isinstance(v, Fraction):
                d[k] = str(v)
            elif isinstance(v, complex):
                d[k] = [v.real, v.imag]
            else:
                d[k] = v
        d["twist"] = self.twist
        if self.theta:
            d["theta"] = self.theta
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "ClassSpec":
        d = dict(d)
        try:
            kind = d.pop("kind")
        except KeyError:
            raise ClassSpecError("class spec needs a 'kind'") from None
        kw = {}
        for k, v in d.items():
            if k in ("A", "B", "alpha", "beta", "c"):
                if isinstance(v, list):
                    v = complex(float(v[0]), float(v[1]))
                kw[k] = v
            elif k in ("twist", "theta"):
                kw[k] = v
            else:
                raise ClassSpecError(f"unknown class spec field {k!r}")
        return cls(kind, **kw)

    @classmethod
    def from_json(cls, text: str) -> "ClassSpec":
        return cls.from_dict(json.loads(text))


def _backend_for(spec: ClassSpec, backend: str | None, phi: "SchwarzFn | None" = None) -> str:
    if backend is None and phi is not None and phi.backend == FLOAT:
        backend = FLOAT
    backend = backend or spec.default_backend()
    if backend == EXACT and not spec.exact_capable:
        raise BackendError(f"{spec.label()} cannot be computed on the exact backend")
    return backend


def _num(x, backend: str):
    """Parameter value in the arithmetic of ``backend``."""
    if backend == EXACT:
        return x
    return complex(x) if isinstance(x, complex) else float(x)


# ---------------------------------------------------------------------------
# Schwarz functions


@dataclass(frozen=True)
class SchwarzFn:
    """``phi(z) = z * psi(z)`` with ``psi`` given by Schur parameters."""

    schur: tuple
    series: Series = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        return self.series.order

    @property
    def backend(self) -> str:
        return self.series.backend

    def coefficients(self, k_max: int) -> list:
        return coefficients_of(self, k_max)

    def rotated(self, theta: float) -> "SchwarzFn":
        """``phi(e^{i theta} z)``, which carries Schur parameters ``lambda_k e^{i(k+1) theta}``."""
        if theta == 0.0:
            return self
        s = self.series.to_float().rotate(theta)
        lam = tuple(complex(l) * cmath.exp(1j * (k + 1) * theta) for k, l in enumerate(self.schur))
        return SchwarzFn(lam, s)

    def to_dict(self) -> dict:
        out = []
        for l in self.schur:
            if isinstance(l, Fraction):
                out.append([str(l), "0"])
            else:
                out.append([complex(l).real, complex(l).imag])
        return {"schur": out}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _schur_value(v):
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise SchwarzError(f"Schur parameter must be [re, im], got {v!r}")
        re, im = (as_param(x) for x in v)
        if isinstance(re, Fraction) and isinstance(im, Fraction) and im == 0:
            return re
        return complex(float(re), float(im))
    v = as_param(v)
    return v


def _modulus(x) -> float:
    return abs(complex(x))


def schwarz_from_schur(params: Sequence, N: int, backend: str | None = None) -> SchwarzFn:
    """Build ``phi = z * psi`` from Schur parameters ``lambda_0 .. lambda_m``.

    ``psi_m = lambda_m`` and ``psi_k = (lambda_k + z psi_{k+1}) / (1 + conj(lambda_k) z psi_{k+1})``.
    A unimodular ``lambda_k`` ends the recursion (``psi_k`` is that constant).
    The returned series has order ``N``.
    """
    lam = [_schur_value(p) for p in params]
    if not lam:
        lam = [Fraction(0)]
    for l in lam:
        if _modulus(l) > 1 + SCHUR_TOL:
            raise SchwarzError(f"Schur parameter {l} has modulus > 1")
    if backend is None:
        backend = EXACT if all(isinstance(l, Fraction) for l in lam) else FLOAT
    if backend == EXACT and not all(isinstance(l, Fraction) for l in lam):
        raise BackendError("exact Schwarz functions need real rational Schur parameters")
    for j, l in enumerate(lam):
        if (l * l == 1) if backend == EXACT else abs(_modulus(l) - 1) <= SCHUR_TOL:
            lam = lam[: j + 1]
            break
    if backend == FLOAT:
        lam = [complex(l) for l in lam]
    if N < 1:
        raise SchwarzError("Schwarz function order must be >= 1")
    m = N - 1  # psi is needed to order N - 1
    psi = Series([lam[-1]], backend, m)
    for l in reversed(lam[:-1]):
        zpsi = psi.shift_up().truncate(m)
        conj_l = l if backend == EXACT else l.conjugate()
        psi = div(zpsi + l, zpsi * conj_l + 1)
    phi = psi.shift_up()
    return SchwarzFn(tuple(lam), phi)


def schwarz_from_coefficients(coeffs: Sequence, N: int | None = None, tol: float = SCHUR_TOL) -> SchwarzFn:
    """Refit raw coefficients ``c_1 .. c_m`` of ``phi`` into Schur parameters.

    Runs the forward Schur algorithm on ``psi = phi / z`` and rejects the
    input if any step produces a parameter of modulus above ``1 + tol``.
    """
    c = [_schur_value(x) for x in coeffs]
    exact = all(isinstance(x, Fraction) for x in c)
    backend = EXACT if exact else FLOAT
    m = len(c) - 1
    if m < 0:
        raise SchwarzError("need at least c_1")
    psi = Series(c, backend)
    lam = []
    while True:
        l = psi[0]
        if _modulus(l) > 1 + tol:
            raise SchwarzError(f"coefficients are not those of a Schwarz function (Schur step {len(lam)}: |{l}| > 1)")
        lam.append(l)
        if psi.order == 0:
            break
        if abs(_modulus(l) - 1) <= tol:
            rest = psi - l
            if max(_modulus(x) for x in rest.coeffs) > tol:
                raise SchwarzError("unimodular Schur parameter with nonconstant remainder")
            break
        conj_l = l if exact else complex(l).conjugate()
        num = psi - l
        den = psi * (-conj_l) + 1
        q = div(num, den).shift_down()
        psi = q
    return schwarz_from_schur(lam, N if N is not None else m + 1, backend)


def schwarz_monomial(k: int, N: int, backend: str = EXACT, coeff=1) -> SchwarzFn:
    """``phi(z) = coeff * z**k`` (``|coeff| = 1``): Schur parameters ``0, .., 0, coeff``."""
    params = [0] * (k - 1) + [coeff]
    return schwarz_from_schur(params, N, backend)


def coefficients_of(phi: SchwarzFn, k_max: int) -> list:
    """``c_1 .. c_{k_max}`` of ``phi``."""
    if not 1 <= k_max <= phi.order:
        raise SchwarzError(f"k_max={k_max} outside cached order 1..{phi.order}")
    return list(phi.series.coeffs[1 : k_max + 1])


def schwarz_from_json(text: str, N: int, backend: str | None = None) -> SchwarzFn:
    d = json.loads(text)
    if not isinstance(d, dict) or "schur" not in d:
        raise SchwarzError('Schwarz function JSON must be {"schur": [[re, im], ...]}')
    return schwarz_from_schur(d["schur"], N, backend)


# ---------------------------------------------------------------------------
# Subordination targets


def _target_minus_one(spec: ClassSpec, N: int, backend: str) -> Series:
    """Series of ``target(w) - 1`` in the variable ``w``, truncated at ``N``."""
    geo = Series.geometric(N, backend)  # 1/(1-w)
    w_over = (geo - 1)  # w/(1-w)
    if spec.kind == "janowski":
        A, B = _num(spec.A, backend), _num(spec.B, backend)
        # (1 + A w)/(1 + B w) - 1 = (A - B) w / (1 + B w)
        return (Series.geometric(N, backend, -B) - 1) * ((A - B) / -B) if B != 0 else Series.monomial(1, N, backend, A)
    if spec.kind == "spiral":
        a, b = float(spec.alpha), float(spec.beta)
        k = 2 * (1 - b) * cmath.exp(1j * a) * math.cos(a)
        return w_over * k
    if spec.kind == "strongly_starlike":
        # ((1+w)/(1-w))^alpha = exp(alpha * (log(1+w) - log(1-w)))
        two_odd = Series([0 if k % 2 == 0 else Fraction(2, k) for k in range(N + 1)], backend)
        return exp_zero(two_odd * _num(spec.alpha, backend)) - 1
    c = _num(spec.c, backend)
    return w_over * (c if spec.kind == "F" else -c)


def _drive(spec: ClassSpec, phi: SchwarzFn, N: int, backend: str) -> Series:
    if phi.order < N:
        raise SchwarzError(f"Schwarz function cached to order {phi.order}, need {N}")
    if backend == FLOAT and phi.backend == EXACT:
        phi_s = phi.series.to_float()
    elif backend == EXACT and phi.backend == FLOAT:
        raise BackendError("exact member needs an exact Schwarz function")
    else:
        phi_s = phi.series
    phi_s = phi_s.truncate(N)
    if spec.theta:
        if backend == EXACT:
            raise BackendError("rotations need the float backend")
        phi_s = phi_s.rotate(spec.theta)
    return compose(_target_minus_one(spec, N, backend), phi_s)


def log_derivative_drive(spec: ClassSpec, phi: SchwarzFn, N: int, backend: str | None = None) -> Series:
    """``target(phi) - 1``: ``zf'/f - 1`` or ``zf''/f'`` of the generated member, to order ``N``."""
    backend = _backend_for(spec, backend, phi)
    return _drive(spec, phi, N, backend)


def member_from_schwarz(spec: ClassSpec, phi: SchwarzFn, N: int, backend: str | None = None) -> Series:
    """The class member driven by ``phi``; ``f`` truncated at order ``N + 1``.

    Without an explicit ``backend`` the float backend is used whenever ``phi``
    is a float Schwarz function or the class needs it.
    """
    backend = _backend_for(spec, backend, phi)
    if N < 1:
        raise ClassSpecError("N must be >= 1")
    h = _drive(spec, phi, N, backend)
    g = exp_zero(integrate_over_t(h))
    if spec.kind in ("F", "G"):
        return g.antiderivative()  # g = f'
    return g.shift_up()  # g = f/z


def _binomial_unit(n: int, N: int, backend: str, a, e) -> Series:
    """``(1 + a z^n) ** e`` to order ``N``."""
    base = Series.monomial(n, N, backend, a) + 1
    return series_pow(base, e)


def extremal_series(spec: ClassSpec, N: int, backend: str | None = None) -> Series:
    """The named extremal function of ``spec`` with twist ``n``, truncated at order ``N + 1``.

    janowski       z (1 + B z^n)^((A - B)/(n B)),  or z exp(A z^n / n) when B = 0
    spiral         z / (1 - z^n)^(2 (1 - beta) cos(alpha) / n)
    strongly ss.   zf'/f = ((1 + z^n)/(1 - z^n))^alpha
    F(c)           f' = (1 - z^n)^(-c/n)   (twist 1: ((1 - z)^(1-c) - 1)/(c - 1), -log(1 - z) at c = 1)
    G(c)           f' = (1 - z^n)^(c/n)
    """
    if spec.theta:
        spec = ClassSpec(spec.kind, **spec.params, twist=spec.twist)
    backend = _backend_for(spec, backend)
    n = spec.twist
    if spec.kind == "janowski":
        A, B = _num(spec.A, backend), _num(spec.B, backend)
        if B == 0:
            expo = Series.monomial(n, N, backend, A / n) if backend == FLOAT else Series.monomial(n, N, backend, Fraction(A) / n)
            return exp_zero(expo).shift_up()
        return _binomial_unit(n, N, backend, B, (A - B) / (n * B)).shift_up()
    if spec.kind == "spiral":
        gam = 2 * (1 - float(spec.beta)) * math.cos(float(spec.alpha))
        return _binomial_unit(n, N, backend, -1, -gam / n).shift_up()
    if spec.kind == "strongly_starlike":
        phi = schwarz_monomial(n, N, backend)
        return member_from_schwarz(spec, phi, N, backend)
    c = _num(spec.c, backend)
    e = (-c if spec.kind == "F" else c) / n
    if backend == EXACT:
        e = Fraction(e)
    return _binomial_unit(n, N, backend, -1, e).antiderivative()
