"""Harmonic mappings ``f = h + conj(g)`` and the class F(alpha, lambda, n).

Members are built either from a Schwarz function through the integral
representation (:func:`from_schwarz`) or from a given analytic part by the
coupling ``g' = lambda z^n h'`` (:func:`couple_g`).
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .series import (
    DEFAULT_ORDER,
    ComplexSeries,
    antiderivative,
    check_disk,
    derivative,
    divide,
    evaluate,
    exp_series,
    power_series,
)

RECURRENCE_TOL = 1e-12
MIN_COLLISION_S = 1e-3


class ClassParameterError(ValueError):
    """Parameters outside the admissible ranges of F(alpha, lambda, n)."""


@dataclass(frozen=True)
class ClassParams:
    """Parameters ``(alpha, lambda, n)`` of F(alpha, lambda, n).

    ``1 < alpha <= 3/2`` and ``|lambda| <= 1/(n+1)``.  The dilatation of every
    member is ``lambda z^n``, so ``k = |lambda|`` bounds it on the disk.
    """

    alpha: float
    lam: complex = 0j
    n: int = 1

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "lam", complex(self.lam))
        if isinstance(self.n, bool) or int(self.n) != self.n:
            raise ClassParameterError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if not 1.0 < self.alpha <= 1.5:
            raise ClassParameterError(f"alpha must satisfy 1 < alpha <= 3/2, got {self.alpha}")
        if self.n < 1:
            raise ClassParameterError(f"n must be >= 1, got {self.n}")
        # tiny relative slack so that lambda = 1/(n+1) typed as a float is admitted
        if abs(self.lam) > (1.0 / (self.n + 1)) * (1 + 1e-14):
            raise ClassParameterError(
                f"|lambda| = {abs(self.lam):.6g} exceeds 1/(n+1) = {1.0 / (self.n + 1):.6g}"
            )

    @property
    def k(self) -> float:
        """Sup of the dilatation modulus, ``|lambda|``."""
        return abs(self.lam)

    @property
    def K(self) -> float:
        return qc_constant(self)


def qc_constant(params: ClassParams) -> float:
    """Quasiconformality constant ``(1+k)/(1-k)`` with ``k = |lambda|``."""
    k = abs(params.lam)
    return (1 + k) / (1 - k)


@dataclass(frozen=True)
class SchwarzFunction:
    """Analytic self-map of the disk fixing 0, with a certified sup bound.

    ``sup_bound`` is the supremum of ``|w|`` over the open disk.  A value of
    exactly 1 is admissible when it is not attained (e.g. ``w(z) = z``).
    """

    series: ComplexSeries
    sup_bound: float

    def __post_init__(self):
        if self.series.coeffs[0] != 0:
            raise ValueError("a Schwarz function must vanish at the origin")
        if not self.sup_bound <= 1.0:
            raise ValueError(f"sup bound {self.sup_bound} exceeds 1; not a self-map of the disk")

    @classmethod
    def monomial(cls, c: complex, m: int, order: int = DEFAULT_ORDER) -> "SchwarzFunction":
        """``w(z) = c z^m`` with ``|c| <= 1`` and ``m >= 1``."""
        if m < 1:
            raise ValueError("monomial degree must be >= 1")
        if abs(c) > 1:
            raise ValueError(f"|c| = {abs(c)} > 1 is not a Schwarz function")
        return cls(ComplexSeries.monomial(c, m, order), abs(c))

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "SchwarzFunction":
        return cls(ComplexSeries.constant(0, order), 0.0)


@dataclass(frozen=True, eq=False)
class HarmonicMapping:
    """``f = h + conj(g)`` with normalized analytic part ``h``.

    ``params`` is ``None`` for free-form mappings such as ``h_beta`` with
    ``g = 0``.  The coefficient recurrence linking ``g`` to ``h`` is *not*
    enforced here (see :meth:`recurrence_residual`) so that corrupted files can
    still be loaded and reported on.
    """

    h: ComplexSeries
    g: ComplexSeries
    params: ClassParams | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if abs(self.h[0]) > 1e-14 or abs(self.h[1] - 1) > 1e-14:
            raise ValueError("analytic part must satisfy h(0) = 0 and h'(0) = 1")
        if abs(self.g[0]) > 1e-14:
            raise ValueError("co-analytic part must satisfy g(0) = 0")
        if self.params is not None:
            low = self.g.coeffs[1 : self.params.n + 1]
            if np.any(np.abs(low) > 1e-14):
                raise ValueError(f"g must vanish to order n = {self.params.n} for class members")

    @property
    def order(self) -> int:
        return min(self.h.order, self.g.order)

    @property
    def a(self) -> np.ndarray:
        return self.h.coeffs

    @property
    def b(self) -> np.ndarray:
        return self.g.coeffs

    def recurrence_residual(self) -> float:
        """``max_k |(k+n) b_{k+n} - lambda k a_k|`` over stored indices."""
        if self.params is None:
            raise ValueError("recurrence is only defined for class members")
        n, lam = self.params.n, self.params.lam
        top = min(self.h.order, self.g.order - n)
        if top < 1:
            return 0.0
        k = np.arange(1, top + 1)
        lhs = (k + n) * self.g.coeffs[k + n]
        rhs = lam * k * self.h.coeffs[k]
        return float(np.max(np.abs(lhs - rhs)))

    def __call__(self, z):
        return eval_mapping(self, z)

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        p = self.params
        out = {
            "alpha": None if p is None else p.alpha,
            "lambda": None if p is None else [p.lam.real, p.lam.imag],
            "n": None if p is None else p.n,
            "order": self.h.order,
            "h": [[c.real, c.imag] for c in self.h.coeffs.tolist()],
            "g": [[c.real, c.imag] for c in self.g.coeffs.tolist()],
        }
        if self.meta:
            out["meta"] = self.meta
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "HarmonicMapping":
        # "order" is that of h; g may carry up to n further exact coefficients
        order = int(d["order"])
        h = ComplexSeries([complex(re, im) for re, im in d["h"]], order)
        g = ComplexSeries([complex(re, im) for re, im in d["g"]], max(order, len(d["g"]) - 1))
        params = None
        if d.get("alpha") is not None:
            lam = d.get("lambda") or [0.0, 0.0]
            params = ClassParams(d["alpha"], complex(lam[0], lam[1]), int(d["n"]))
        return cls(h, g, params, dict(d.get("meta") or {}))

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def save(self, path) -> None:
        Path(path).write_text(self.dumps() + "\n")

    @classmethod
    def load(cls, path) -> "HarmonicMapping":
        return cls.from_dict(json.loads(Path(path).read_text()))


def _check_normalized(h: ComplexSeries) -> None:
    if h.order < 1 or abs(h[0]) > 1e-14 or abs(h[1] - 1) > 1e-14:
        raise ValueError("h must be normalized: a_0 = 0 and a_1 = 1")


def couple_g(h: ComplexSeries, params: ClassParams) -> HarmonicMapping:
    """Attach the co-analytic part ``g = int_0^z lambda t^n h'(t) dt``.

    ``g`` keeps order ``N + n`` for ``h`` of order ``N``: those are exactly the
    coefficients fixed by the stored ``a_k``, and with them ``g'/h'`` equals
    ``lambda z^n`` identically for the truncated pair.
    """
    _check_normalized(h)
    if not isinstance(params, ClassParams):
        raise TypeError("params must be ClassParams")
    gp = derivative(h).shift(params.n) * params.lam
    return HarmonicMapping(h, antiderivative(gp), params)


def from_schwarz(w: SchwarzFunction, params: ClassParams) -> HarmonicMapping:
    """Class member generated by a Schwarz function.

    Builds ``log h' = 2(1-alpha) int_0^z w(t)/(t(1-w(t))) dt`` as a series,
    exponentiates, integrates and couples.  The result has the order of
    ``w.series``.
    """
    if w.sup_bound > 1:
        raise ValueError("Schwarz function bound must not exceed 1 (pole of 1/(1-w))")
    ws = w.series
    q = ws.divide_by_z()
    integrand = divide(q, 1 - ws)
    log_hp = antiderivative(integrand) * (2 * (1 - params.alpha))
    hp = exp_series(log_hp)
    h = antiderivative(hp).truncate(ws.order)
    f = couple_g(h, params)
    return HarmonicMapping(f.h, f.g, params)


def extremal_h(k: int, alpha: float, order: int = DEFAULT_ORDER) -> ComplexSeries:
    """``int_0^z (1 - t^{k-1})^{2(alpha-1)/(k-1)} dt``, attaining ``|a_k| = 2(alpha-1)/((k-1)k)``."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if not 1.0 < alpha <= 1.5:
        raise ClassParameterError(f"alpha must satisfy 1 < alpha <= 3/2, got {alpha}")
    base = 1 - ComplexSeries.monomial(1, k - 1, order - 1)
    hp = power_series(base, 2 * (alpha - 1) / (k - 1))
    return antiderivative(hp)


def counterexample_h(beta: float, order: int = DEFAULT_ORDER) -> ComplexSeries:
    """``h_beta(z) = (1 - (1-z)^beta)/beta`` for ``2 < beta < 3``."""
    if not 2.0 < beta < 3.0:
        raise ValueError(f"beta must lie in (2, 3), got {beta}")
    one_minus_z = 1 - ComplexSeries.variable(order)
    return (1 - power_series(one_minus_z, beta)) / beta


def counterexample_order(beta: float, s: float | None = None, tol: float = 1e-13,
                         max_order: int = 1 << 14) -> int:
    """Smallest truncation order (>= 64) whose tail at the collision point is below ``tol``.

    The binomial coefficients of ``(1-z)^beta`` decrease in modulus beyond
    degree 3, so ``|c_{N+1}| rho^{N+1} / (1 - rho)`` bounds the tail at
    ``|z| = rho``.
    """
    z1, _ = collision_pair(beta, s)
    rho = abs(z1)
    c = 1.0  # |binom(beta, j)|
    for j in range(1, max_order + 2):
        c *= abs((beta - j + 1) / j)
        if j - 1 >= DEFAULT_ORDER and j > 3 and c / beta * rho**j / (1 - rho) < tol:
            return j - 1
    return max_order


def collision_bracket(beta: float) -> tuple[float, float]:
    return MIN_COLLISION_S, 2 * math.cos(math.pi / beta)


def collision_pair(beta: float, s: float | None = None) -> tuple[complex, complex]:
    """Two distinct points with ``h_beta(z1) = h_beta(z2)``.

    ``z1 = 1 - s e^{-i pi/beta}`` makes ``beta * arg(1 - z1) = -pi``, so
    ``h_beta(z1)`` is real; ``z2 = conj(z1)`` then gives the same value because
    ``h_beta`` has real coefficients.
    """
    if not 2.0 < beta < 3.0:
        raise ValueError(f"beta must lie in (2, 3), got {beta}")
    if s is None:
        s = math.cos(math.pi / beta)
    lo, hi = collision_bracket(beta)
    if not lo <= s < hi:
        raise ValueError(f"s must lie in [{lo:g}, {hi:.6g}) for beta = {beta}, got {s}")
    z1 = 1 - s * cmath.exp(-1j * math.pi / beta)
    return z1, z1.conjugate()


def eval_mapping(f: HarmonicMapping, z):
    """``h(z) + conj(g(z))``."""
    zz = check_disk(z)
    out = evaluate(f.h, zz) + np.conj(evaluate(f.g, zz))
    return complex(out) if np.ndim(out) == 0 else out


def dilatation(f: HarmonicMapping, z):
    """Second complex dilatation ``g'(z)/h'(z)``."""
    zz = check_disk(z)
    hp = evaluate(derivative(f.h), zz)
    if np.any(hp == 0):
        raise ZeroDivisionError("h'(z) = 0: dilatation undefined at a critical point of h")
    out = evaluate(derivative(f.g), zz) / hp
    return complex(out) if np.ndim(out) == 0 else out


def jacobian(f: HarmonicMapping, z):
    """``|h'(z)|^2 - |g'(z)|^2``."""
    zz = check_disk(z)
    out = np.abs(evaluate(derivative(f.h), zz)) ** 2 - np.abs(evaluate(derivative(f.g), zz)) ** 2
    return float(out) if np.ndim(out) == 0 else out


def polar_grid(max_radius: float, radii: int, angles: int) -> np.ndarray:
    """``radii x angles`` points with radii evenly spaced in ``(0, max_radius]``."""
    r = np.linspace(max_radius / radii, max_radius, radii)
    t = np.linspace(0, 2 * np.pi, angles, endpoint=False)
    return r[:, None] * np.exp(1j * t)[None, :]


@dataclass(frozen=True)
class MembershipSample:
    alpha: float
    max_real_part: float
    argmax: complex
    passed: bool


def sample_membership(h: ComplexSeries, alpha: float, angles: int = 256, radii: int = 64,
                      max_radius: float = 0.99) -> MembershipSample:
    """Sample ``Re(1 + z h''/h')`` on a polar grid and compare with ``alpha``.

    Only a necessary condition: a truncated series cannot certify the strict
    inequality on the whole open disk.
    """
    z = polar_grid(max_radius, radii, angles)
    hp = derivative(h)
    val = (1 + z * evaluate(derivative(hp), z) / evaluate(hp, z)).real
    i = np.unravel_index(np.argmax(val), val.shape)
    m = float(val[i])
    return MembershipSample(alpha, m, complex(z[i]), m < alpha)


def identity_mapping(order: int = DEFAULT_ORDER) -> HarmonicMapping:
    return HarmonicMapping(ComplexSeries.variable(order), ComplexSeries.constant(0, order))


def heart_mapping(order: int = DEFAULT_ORDER) -> HarmonicMapping:
    """``z - z^2/2 + conj(z^2/4 - z^3/6)`` in F(3/2, 1/2)."""
    return from_schwarz(SchwarzFunction.monomial(1, 1, order), ClassParams(1.5, 0.5, 1))


def random_member(rng: np.random.Generator, order: int = DEFAULT_ORDER, n_max: int = 3,
                  m_max: int = 4, n: int | None = None) -> HarmonicMapping:
    """Random class member from a monomial Schwarz function ``c z^m``.

    ``alpha`` is uniform on (1, 3/2] with a quarter of the draws pinned to 3/2,
    ``|c|`` likewise pinned to 1 a quarter of the time, so extremal cases occur.
    """
    alpha = 1.5 if rng.random() < 0.25 else 1 + 0.5 * (1 - rng.random())
    n = int(rng.integers(1, n_max + 1)) if n is None else n
    lam_abs = (1 / (n + 1)) * (1.0 if rng.random() < 0.25 else rng.random())
    lam = lam_abs * cmath.exp(2j * math.pi * rng.random())
    m = int(rng.integers(1, m_max + 1))
    c_abs = 1.0 if rng.random() < 0.25 else rng.random()
    c = c_abs * cmath.exp(2j * math.pi * rng.random())
    f = from_schwarz(SchwarzFunction.monomial(c, m, order), ClassParams(alpha, lam, n))
    return HarmonicMapping(f.h, f.g, f.params, {"schwarz": {"c": [c.real, c.imag], "m": m}})
