"""Truncated complex power series on the unit disk.

A :class:`ComplexSeries` holds the Taylor coefficients ``c[0..N]`` of an
analytic function together with its truncation order ``N``.  Terms of degree
larger than ``N`` are *unknown*, not zero, so every binary operation returns a
series whose order is the smaller of the two operand orders.

    >>> z = ComplexSeries.variable(4)
    >>> ((1 + z) * (1 - z)).coeffs.real
    array([ 1.,  0., -1.,  0.,  0.])
"""
from __future__ import annotations

from numbers import Number

import numpy as np

DEFAULT_ORDER = 64


class SeriesError(ValueError):
    """Raised for operations that are undefined on the given series."""


class ComplexSeries:
    """Immutable truncated power series ``sum_{m<=N} c_m z^m``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs, order: int | None = None):
        c = np.array(coeffs, dtype=np.complex128).ravel()
        if order is None:
            if c.size == 0:
                raise SeriesError("empty coefficient list needs an explicit order")
            order = c.size - 1
        order = int(order)
        if order < 0:
            raise SeriesError(f"order must be >= 0, got {order}")
        if c.size > order + 1:
            c = c[: order + 1]
        elif c.size < order + 1:
            c = np.concatenate([c, np.zeros(order + 1 - c.size, dtype=np.complex128)])
        c.setflags(write=False)
        self._c = c

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, value, order: int = DEFAULT_ORDER) -> "ComplexSeries":
        return cls([value], order)

    @classmethod
    def variable(cls, order: int = DEFAULT_ORDER) -> "ComplexSeries":
        """The identity function ``z``."""
        return cls([0, 1], order) if order >= 1 else cls([0], 0)

    @classmethod
    def monomial(cls, coeff, degree: int, order: int = DEFAULT_ORDER) -> "ComplexSeries":
        c = np.zeros(order + 1, dtype=np.complex128)
        if degree <= order:
            c[degree] = coeff
        return cls(c, order)

    @classmethod
    def geometric(cls, order: int = DEFAULT_ORDER) -> "ComplexSeries":
        """``1/(1-z)`` truncated at ``order``."""
        return cls(np.ones(order + 1), order)

    # -- basic accessors --------------------------------------------------
    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    def __getitem__(self, m: int) -> complex:
        if m < 0:
            raise IndexError(m)
        return complex(self._c[m]) if m <= self.order else 0j

    def __len__(self) -> int:
        return self._c.size

    def __repr__(self) -> str:
        return f"ComplexSeries(order={self.order}, coeffs={np.array2string(self._c[:6], precision=6)}{'...' if self.order > 5 else ''})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexSeries):
            return NotImplemented
        return self.order == other.order and bool(np.array_equal(self._c, other._c))

    __hash__ = None

    def truncate(self, order: int) -> "ComplexSeries":
        if order > self.order:
            raise SeriesError(f"cannot raise order {self.order} to {order} by truncation")
        return ComplexSeries(self._c[: order + 1], order)

    def conj_coeffs(self) -> "ComplexSeries":
        """Series with conjugated coefficients, i.e. ``conj(a(conj z))``."""
        return ComplexSeries(np.conj(self._c), self.order)

    def shift(self, k: int) -> "ComplexSeries":
        """Multiply by ``z**k``; the order grows by ``k`` since no term is lost."""
        if k < 0:
            raise SeriesError("use divide_by_z for negative shifts")
        return ComplexSeries(np.concatenate([np.zeros(k, np.complex128), self._c]), self.order + k)

    def divide_by_z(self) -> "ComplexSeries":
        """``a(z)/z`` for a series vanishing at the origin."""
        if self._c[0] != 0:
            raise SeriesError("constant term must vanish to divide by z")
        if self.order == 0:
            return ComplexSeries([0], 0)
        return ComplexSeries(self._c[1:], self.order - 1)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "ComplexSeries":
        if isinstance(other, ComplexSeries):
            return other
        if isinstance(other, Number) or np.isscalar(other):
            return ComplexSeries.constant(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        return ComplexSeries(self._c[: n + 1] + other._c[: n + 1], n)

    __radd__ = __add__

    def __neg__(self):
        return ComplexSeries(-self._c, self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number) and not isinstance(other, ComplexSeries):
            return ComplexSeries(self._c * other, self.order)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        prod = np.convolve(self._c[: n + 1], other._c[: n + 1])[: n + 1]
        return ComplexSeries(prod, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number) and not isinstance(other, ComplexSeries):
            return ComplexSeries(self._c / other, self.order)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return divide(self, other)

    def __rtruediv__(self, other):
        return divide(ComplexSeries.constant(other, self.order), self)

    # -- calculus ---------------------------------------------------------
    def derivative(self) -> "ComplexSeries":
        return derivative(self)

    def antiderivative(self) -> "ComplexSeries":
        return antiderivative(self)

    def exp(self) -> "ComplexSeries":
        return exp_series(self)

    def log(self) -> "ComplexSeries":
        return log_series(self)

    def __call__(self, z):
        return evaluate(self, z)


def add(a: ComplexSeries, b: ComplexSeries) -> ComplexSeries:
    return a + b


def sub(a: ComplexSeries, b: ComplexSeries) -> ComplexSeries:
    return a - b


def mul(a: ComplexSeries, b: ComplexSeries) -> ComplexSeries:
    """Cauchy product truncated at the smaller order."""
    return a * b


def divide(a: ComplexSeries, b: ComplexSeries) -> ComplexSeries:
    """Formal quotient ``a/b``; ``b`` must have a nonzero constant term."""
    b0 = b.coeffs[0]
    if b0 == 0:
        raise SeriesError("divisor has zero constant term")
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    q = np.zeros(n + 1, dtype=np.complex128)
    for m in range(n + 1):
        # q_m = (a_m - sum_{k=1}^m b_k q_{m-k}) / b_0
        acc = ac[m] - np.dot(bc[1 : m + 1], q[m - 1 :: -1][:m]) if m else ac[0]
        q[m] = acc / b0
    return ComplexSeries(q, n)


def derivative(a: ComplexSeries) -> ComplexSeries:
    """Termwise derivative; the order drops by one (floored at zero)."""
    if a.order == 0:
        return ComplexSeries([0], 0)
    m = np.arange(1, a.order + 1)
    return ComplexSeries(m * a.coeffs[1:], a.order - 1)


def antiderivative(a: ComplexSeries) -> ComplexSeries:
    """Termwise integral from 0; the order grows by one."""
    m = np.arange(1, a.order + 2)
    return ComplexSeries(np.concatenate([[0], a.coeffs / m]), a.order + 1)


def exp_series(a: ComplexSeries) -> ComplexSeries:
    """Formal exponential.

    Uses ``E' = a' E``, i.e. ``m E_m = sum_{k=1}^m k a_k E_{m-k}``.
    """
    n = a.order
    ka = np.arange(n + 1) * a.coeffs
    e = np.zeros(n + 1, dtype=np.complex128)
    e[0] = np.exp(a.coeffs[0])
    for m in range(1, n + 1):
        e[m] = np.dot(ka[1 : m + 1], e[m - 1 :: -1][:m]) / m
    return ComplexSeries(e, n)


def log_series(a: ComplexSeries) -> ComplexSeries:
    """Formal logarithm of a series with constant term 1 (branch ``log 1 = 0``).

    Uses ``a L' = a'``, i.e. ``m L_m = m a_m - sum_{k=1}^{m-1} k L_k a_{m-k}``.
    """
    if a.coeffs[0] != 1:
        raise SeriesError(
            f"log_series needs constant term 1, got {a.coeffs[0]!r}; normalize the series first"
        )
    n = a.order
    c = a.coeffs
    kl = np.zeros(n + 1, dtype=np.complex128)  # k * L_k
    for m in range(1, n + 1):
        kl[m] = m * c[m] - np.dot(kl[1:m], c[m - 1 : 0 : -1])
    out = np.zeros(n + 1, dtype=np.complex128)
    out[1:] = kl[1:] / np.arange(1, n + 1)
    return ComplexSeries(out, n)


def power_series(a: ComplexSeries, exponent: float) -> ComplexSeries:
    """Principal branch of ``a**exponent`` for ``a(0) = 1``, as ``exp(exponent*log a)``."""
    return exp_series(log_series(a) * exponent)


def check_disk(z) -> np.ndarray:
    zz = np.asarray(z, dtype=np.complex128)
    if np.any(np.abs(zz) >= 1):
        raise ValueError("evaluation point must lie in the open unit disk |z| < 1")
    return zz


def evaluate(a: ComplexSeries, z):
    """Horner evaluation of the truncated polynomial at ``z`` (scalar or array)."""
    zz = check_disk(z)
    c = a.coeffs
    acc = np.full(zz.shape, c[-1], dtype=np.complex128)
    for coef in c[-2::-1]:
        acc = acc * zz + coef
    return complex(acc) if acc.ndim == 0 else acc


eval_series = evaluate
