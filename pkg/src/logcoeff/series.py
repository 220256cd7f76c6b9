"""Truncated power series over two coefficient backends.

A :class:`Series` holds ``a_0 .. a_N`` of a formal power series truncated at
order ``N``. The ``exact`` backend stores :class:`fractions.Fraction`
coefficients; the ``float`` backend stores a read-only ``complex128`` array.
Every closed operation preserves the backend and the order, and mixing
backends raises :class:`BackendError`.

``log_unit`` and ``exp_zero`` use the first-order recursions that follow from
``L' = s'/s`` and ``E' = E L'``, so both are O(N^2) and never expand powers of
the argument.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)

MAX_ORDER = 4096
UNIT_TOL = 1e-12


class SeriesError(ValueError):
    """Precondition of a series operation is violated."""


class BackendError(SeriesError):
    """Operands live on different backends or have different orders."""


def exact_scalar(x) -> Fraction:
    """Coerce ``x`` to a Fraction, refusing anything inexact."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, numbers.Rational):
        return Fraction(x.numerator, x.denominator)
    raise BackendError(f"exact backend needs a rational scalar, got {x!r}")


def float_scalar(x) -> complex:
    if isinstance(x, str):
        return complex(Fraction(x))
    return complex(x)


class Series:
    """Immutable truncated power series ``sum_{k<=N} a_k z^k``."""

    __slots__ = ("_c", "backend")

    def __init__(self, coeffs: Iterable, backend: str = EXACT, order: int | None = None):
        if backend not in BACKENDS:
            raise SeriesError(f"unknown backend {backend!r}")
        if backend == EXACT:
            c = [exact_scalar(x) for x in coeffs]
        else:
            c = [float_scalar(x) for x in coeffs]
        if order is not None:
            if order < 0:
                raise SeriesError("order must be >= 0")
            zero = Fraction(0) if backend == EXACT else 0j
            c = (c + [zero] * (order + 1 - len(c)))[: order + 1]
        if not c:
            raise SeriesError("a series needs at least one coefficient")
        if len(c) - 1 > MAX_ORDER:
            raise SeriesError(f"order {len(c) - 1} exceeds {MAX_ORDER}")
        if backend == EXACT:
            data = tuple(c)
        else:
            data = np.array(c, dtype=complex)
            data.flags.writeable = False
        object.__setattr__(self, "_c", data)
        object.__setattr__(self, "backend", backend)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    # -- construction helpers -------------------------------------------

    @classmethod
    def _raw(cls, data, backend: str) -> "Series":
        s = object.__new__(cls)
        if backend == FLOAT:
            data = np.asarray(data, dtype=complex)
            data.flags.writeable = False
        else:
            data = tuple(data)
        object.__setattr__(s, "_c", data)
        object.__setattr__(s, "backend", backend)
        return s

    @classmethod
    def zero(cls, order: int, backend: str = EXACT) -> "Series":
        return cls([0], backend, order)

    @classmethod
    def one(cls, order: int, backend: str = EXACT) -> "Series":
        return cls([1], backend, order)

    @classmethod
    def monomial(cls, k: int, order: int, backend: str = EXACT, coeff=1) -> "Series":
        """``coeff * z**k`` truncated at ``order`` (vanishes when ``k > order``)."""
        c = [0] * (order + 1)
        if k <= order:
            c[k] = coeff
        return cls(c, backend)

    @classmethod
    def geometric(cls, order: int, backend: str = EXACT, ratio=1) -> "Series":
        """``1/(1 - ratio*z)``."""
        if backend == EXACT:
            r = exact_scalar(ratio)
            return cls([r**k for k in range(order + 1)], backend)
        r = float_scalar(ratio)
        return cls._raw(r ** np.arange(order + 1), backend)

    # -- accessors --------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple:
        """Coefficients as a tuple (Fractions or Python complex)."""
        if self.backend == EXACT:
            return self._c
        return tuple(complex(x) for x in self._c)

    def array(self) -> np.ndarray:
        """Complex numpy view of the coefficients (a copy for the exact backend)."""
        if self.backend == FLOAT:
            return self._c
        return np.array([complex(x) for x in self._c], dtype=complex)

    def __getitem__(self, k):
        v = self._c[k]
        if self.backend == FLOAT and not isinstance(k, slice):
            return complex(v)
        return v

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self) -> str:
        body = ", ".join(str(x) for x in self.coeffs[:8])
        more = ", ..." if self.order >= 8 else ""
        return f"Series([{body}{more}], order={self.order}, backend={self.backend!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        if self.backend != other.backend or self.order != other.order:
            return False
        if self.backend == EXACT:
            return self._c == other._c
        return bool(np.array_equal(self._c, other._c))

    __hash__ = None

    def allclose(self, other: "Series", tol: float = 1e-10) -> bool:
        """Per-coefficient absolute comparison, backend-agnostic."""
        if self.order != other.order:
            return False
        return bool(np.max(np.abs(self.array() - other.array()), initial=0.0) <= tol)

    # -- conversion ---------------------------------------------------------

    def to_float(self) -> "Series":
        if self.backend == FLOAT:
            return self
        return Series._raw(self.array(), FLOAT)

    def truncate(self, order: int) -> "Series":
        """Change the truncation order, padding with zeros when growing."""
        if order < 0:
            raise SeriesError("order must be >= 0")
        if order <= self.order:
            return Series._raw(self._c[: order + 1], self.backend)
        zero = Fraction(0) if self.backend == EXACT else 0j
        if self.backend == EXACT:
            return Series._raw(self._c + (zero,) * (order - self.order), EXACT)
        return Series._raw(np.concatenate([self._c, np.zeros(order - self.order, complex)]), FLOAT)

    def _scalar(self, x):
        return exact_scalar(x) if self.backend == EXACT else float_scalar(x)

    def _check(self, other: "Series") -> None:
        if not isinstance(other, Series):
            raise BackendError(f"expected a Series, got {type(other).__name__}")
        if other.backend != self.backend:
            raise BackendError(f"backend mismatch: {self.backend} vs {other.backend}")
        if other.order != self.order:
            raise BackendError(f"order mismatch: {self.order} vs {other.order}")

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Series):
            self._check(other)
            if self.backend == FLOAT:
                return Series._raw(self._c + other._c, FLOAT)
            return Series._raw(tuple(a + b for a, b in zip(self._c, other._c)), EXACT)
        c = list(self._c)
        c[0] = c[0] + self._scalar(other)
        return Series._raw(c, self.backend)

    __radd__ = __add__

    def __neg__(self):
        if self.backend == FLOAT:
            return Series._raw(-self._c, FLOAT)
        return Series._raw(tuple(-a for a in self._c), EXACT)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            return mul(self, other)
        k = self._scalar(other)
        if self.backend == FLOAT:
            return Series._raw(self._c * k, FLOAT)
        return Series._raw(tuple(a * k for a in self._c), EXACT)

    __rmul__ = __mul__

    def scale(self, k) -> "Series":
        return self * k

    # -- calculus helpers -----------------------------------------------------

    def derivative(self) -> "Series":
        """``s'``; the result has order ``N - 1`` (order 0 for constants)."""
        if self.order == 0:
            return Series.zero(0, self.backend)
        if self.backend == FLOAT:
            return Series._raw(self._c[1:] * np.arange(1, self.order + 1), FLOAT)
        return Series._raw(tuple(k * a for k, a in enumerate(self._c) if k > 0), EXACT)

    def antiderivative(self) -> "Series":
        """``int_0^z s(t) dt``; the result has order ``N + 1`` and zero constant term."""
        if self.backend == FLOAT:
            tail = self._c / np.arange(1, self.order + 2)
            return Series._raw(np.concatenate([[0j], tail]), FLOAT)
        return Series._raw((Fraction(0),) + tuple(a / (k + 1) for k, a in enumerate(self._c)), EXACT)

    def shift_up(self, k: int = 1) -> "Series":
        """``z**k * s`` with the order raised by ``k`` (no information lost)."""
        zero = Fraction(0) if self.backend == EXACT else 0j
        if self.backend == FLOAT:
            return Series._raw(np.concatenate([np.zeros(k, complex), self._c]), FLOAT)
        return Series._raw((zero,) * k + self._c, EXACT)

    def shift_down(self, k: int = 1) -> "Series":
        """``s / z**k``; requires the first ``k`` coefficients to vanish."""
        if k > self.order:
            raise SeriesError("cannot divide below order 0")
        head = self._c[:k]
        if self.backend == EXACT:
            if any(a != 0 for a in head):
                raise SeriesError(f"s / z^{k} needs a_0..a_{k - 1} = 0")
        elif np.max(np.abs(head)) > UNIT_TOL:
            raise SeriesError(f"s / z^{k} needs a_0..a_{k - 1} = 0")
        return Series._raw(self._c[k:], self.backend)

    def rotate(self, theta: float) -> "Series":
        """``s(e^{i theta} z)``; float backend only."""
        if self.backend != FLOAT:
            raise BackendError("rotation needs the float backend")
        return Series._raw(self._c * np.exp(1j * theta * np.arange(self.order + 1)), FLOAT)


def _conv_exact(a: Sequence[Fraction], b: Sequence[Fraction], n: int) -> list[Fraction]:
    out = []
    for k in range(n + 1):
        acc = Fraction(0)
        for j in range(k + 1):
            x = a[j]
            if x:
                y = b[k - j]
                if y:
                    acc += x * y
        out.append(acc)
    return out


def mul(a: Series, b: Series) -> Series:
    """Cauchy product truncated at the common order."""
    a._check(b)
    n = a.order
    if a.backend == FLOAT:
        return Series._raw(np.convolve(a._c, b._c)[: n + 1], FLOAT)
    return Series._raw(_conv_exact(a._c, b._c, n), EXACT)


def _require_unit(s: Series, what: str) -> None:
    c0 = s._c[0]
    if s.backend == EXACT:
        if c0 != 1:
            raise SeriesError(f"{what} needs constant term 1, got {c0}")
    elif abs(c0 - 1) >= UNIT_TOL:
        raise SeriesError(f"{what} needs constant term 1, got {complex(c0)}")


def _require_zero(s: Series, what: str) -> None:
    c0 = s._c[0]
    if s.backend == EXACT:
        if c0 != 0:
            raise SeriesError(f"{what} needs constant term 0, got {c0}")
    elif abs(c0) >= UNIT_TOL:
        raise SeriesError(f"{what} needs constant term 0, got {complex(c0)}")


def log_unit(s: Series) -> Series:
    """``log s`` for ``s_0 = 1``, with ``L_0 = 0``.

    From ``s' = L' s``: ``n L_n = n s_n - sum_{k=1}^{n-1} k L_k s_{n-k}``.
    """
    _require_unit(s, "log_unit")
    n_max = s.order
    if s.backend == FLOAT:
        c = s._c
        kl = np.zeros(n_max + 1, complex)  # k * L_k
        for n in range(1, n_max + 1):
            acc = n * c[n] - np.dot(kl[1:n], c[n - 1 : 0 : -1])
            kl[n] = acc / c[0]
        L = np.zeros(n_max + 1, complex)
        L[1:] = kl[1:] / np.arange(1, n_max + 1)
        return Series._raw(L, FLOAT)
    c = s._c
    kl = [Fraction(0)] * (n_max + 1)
    for n in range(1, n_max + 1):
        acc = n * c[n]
        for k in range(1, n):
            if kl[k] and c[n - k]:
                acc -= kl[k] * c[n - k]
        kl[n] = acc
    return Series._raw([Fraction(0)] + [kl[n] / n for n in range(1, n_max + 1)], EXACT)


def exp_zero(s: Series) -> Series:
    """``exp s`` for ``s_0 = 0``, via ``n E_n = sum_{k=1}^n k s_k E_{n-k}``."""
    _require_zero(s, "exp_zero")
    n_max = s.order
    if s.backend == FLOAT:
        ks = s._c * np.arange(n_max + 1)
        E = np.zeros(n_max + 1, complex)
        E[0] = 1.0
        for n in range(1, n_max + 1):
            E[n] = np.dot(ks[1 : n + 1], E[n - 1 :: -1][:n]) / n
        return Series._raw(E, FLOAT)
    ks = [k * a for k, a in enumerate(s._c)]
    E = [Fraction(1)] + [Fraction(0)] * n_max
    for n in range(1, n_max + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if ks[k] and E[n - k]:
                acc += ks[k] * E[n - k]
        E[n] = acc / n
    return Series._raw(E, EXACT)


def pow(s: Series, e) -> Series:  # noqa: A001 - mirrors the algebraic name
    """``s ** e`` for a unit series, as ``exp(e * log s)``.

    The exact backend requires a rational exponent; the float backend accepts
    any real or complex exponent.
    """
    _require_unit(s, "pow")
    if s.backend == EXACT:
        try:
            e = exact_scalar(e)
        except BackendError:
            raise BackendError(f"exact backend needs a rational exponent, got {e!r}") from None
    return exp_zero(log_unit(s) * e)


def reciprocal(s: Series) -> Series:
    """``1/s`` for ``s_0 != 0`` by the direct triangular recursion."""
    n_max = s.order
    c = s._c
    if s.backend == FLOAT:
        if abs(c[0]) < UNIT_TOL:
            raise SeriesError("reciprocal needs a nonzero constant term")
        b = np.zeros(n_max + 1, complex)
        b[0] = 1 / c[0]
        for n in range(1, n_max + 1):
            b[n] = -np.dot(c[1 : n + 1], b[n - 1 :: -1][:n]) * b[0]
        return Series._raw(b, FLOAT)
    if c[0] == 0:
        raise SeriesError("reciprocal needs a nonzero constant term")
    inv0 = 1 / c[0]
    b = [inv0] + [Fraction(0)] * n_max
    for n in range(1, n_max + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if c[k] and b[n - k]:
                acc += c[k] * b[n - k]
        b[n] = -acc * inv0
    return Series._raw(b, EXACT)


def div(a: Series, b: Series) -> Series:
    return mul(a, reciprocal(b))


def compose(outer: Series, inner: Series) -> Series:
    """``outer(inner(z))`` for ``inner_0 = 0`` by Horner accumulation."""
    outer._check(inner)
    _require_zero(inner, "compose")
    n = outer.order
    c = outer._c
    if outer.backend == FLOAT:
        inner_c = inner._c
        acc = np.zeros(n + 1, complex)
        acc[0] = c[n]
        for k in range(n - 1, -1, -1):
            acc = np.convolve(acc, inner_c)[: n + 1]
            acc[0] += c[k]
        return Series._raw(acc, FLOAT)
    acc = [c[n]] + [Fraction(0)] * n
    inner_c = inner._c
    for k in range(n - 1, -1, -1):
        acc = _conv_exact(acc, inner_c, n)
        acc[0] += c[k]
    return Series._raw(acc, EXACT)


def integrate_over_t(s: Series) -> Series:
    """``int_0^z s(t)/t dt``: coefficient ``k`` becomes ``s_k / k``."""
    _require_zero(s, "integrate_over_t")
    if s.backend == FLOAT:
        out = np.zeros(s.order + 1, complex)
        out[1:] = s._c[1:] / np.arange(1, s.order + 1)
        return Series._raw(out, FLOAT)
    return Series._raw([Fraction(0)] + [a / k for k, a in enumerate(s._c) if k > 0], EXACT)
