"""Closed-form coefficient, growth, area and distortion bounds for F(alpha, lambda, n).

Each ``*_bound``/``*_interval`` function is a pure oracle.  The ``check_*``
functions measure the corresponding quantity on a concrete mapping and wrap
the comparison in a :class:`BoundReport`.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .mapclass import ClassParams, HarmonicMapping, eval_mapping
from .series import derivative, evaluate

SLACK = 1e-9


class BoundId(str, Enum):
    CoeffA = "CoeffA"
    CoeffB = "CoeffB"
    FeketeSzegoG = "FeketeSzegoG"
    FeketeSzegoF = "FeketeSzegoF"
    GrowthLower = "GrowthLower"
    GrowthUpper = "GrowthUpper"
    AreaLower = "AreaLower"
    AreaUpper = "AreaUpper"
    DistortLower = "DistortLower"
    DistortUpper = "DistortUpper"
    TailDeriv = "TailDeriv"
    PartialSumCC = "PartialSumCC"


LOWER_BOUNDS = {BoundId.GrowthLower, BoundId.AreaLower, BoundId.DistortLower, BoundId.PartialSumCC}


@dataclass
class BoundReport:
    bound_id: BoundId
    params: dict
    bound_value: float
    measured_value: float | None = None
    satisfied: bool | None = None
    margin: float | None = None
    extra: dict = field(default_factory=dict)

    @classmethod
    def compare(cls, bound_id: BoundId, params: dict, bound: float, measured: float,
                slack: float = SLACK, **extra) -> "BoundReport":
        bound_id = BoundId(bound_id)
        if bound_id in LOWER_BOUNDS:
            margin = measured - bound
        else:
            margin = bound - measured
        return cls(bound_id, params, float(bound), float(measured), bool(margin >= -slack),
                   float(margin), extra)

    @property
    def is_lower(self) -> bool:
        return self.bound_id in LOWER_BOUNDS

    def to_dict(self) -> dict:
        d = {
            "bound_id": self.bound_id.value,
            "params": self.params,
            "bound": self.bound_value,
            "measured": self.measured_value,
            "satisfied": self.satisfied,
            "margin": self.margin,
        }
        d.update(self.extra)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _check_alpha(alpha):
    if not 1 < alpha <= 1.5:
        raise ValueError(f"alpha must satisfy 1 < alpha <= 3/2, got {alpha}")


# -- coefficient bounds ----------------------------------------------------

def coeff_bound_a(k: int, alpha: float) -> float:
    """Sharp bound ``2(alpha-1)/((k-1)k)`` on ``|a_k|``."""
    if k < 2:
        raise ValueError("k must be >= 2")
    _check_alpha(alpha)
    return 2 * (alpha - 1) / ((k - 1) * k)


def coeff_bound_b(k: int, n: int, alpha: float, lambda_abs: float) -> float:
    """Bound on ``|b_{k+n}|``.

    ``|lambda|/(n+1)`` for k = 1; for k >= 2 the recurrence
    ``(k+n) b_{k+n} = lambda k a_k`` gives ``|lambda| k coeff_bound_a(k)/(k+n)``,
    i.e. ``2|lambda|(alpha-1)/((k-1)(k+n))``.  Attained by the extremal
    member for index k, e.g. ``|b_3| = 1/6`` for ``z - z^2/2`` with lambda = 1/2.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return lambda_abs / (n + 1)
    _check_alpha(alpha)
    return 2 * lambda_abs * (alpha - 1) / ((k - 1) * (k + n))


def fekete_szego_G(alpha: float, delta: float) -> float:
    """Piecewise Fekete-Szego bound for the analytic part.

    Caution: the first branch is violated by ``z - z^2/2`` (alpha = 3/2,
    delta = 1 gives 1/12 while ``|a_3 - a_2^2| = 1/4``) and the two branches
    disagree on the boundary.  The verifier uses :func:`fekete_szego_G_sharp`
    unless asked for this form ("fekete-szego-a").
    """
    _check_alpha(alpha)
    center = (3 - 2 * alpha) / (3 * (alpha - 1))
    if abs(delta - center) >= 1 / (3 * (alpha - 1)):
        return (alpha - 1) / 3 * abs(3 + delta - (2 + delta) * alpha)
    return (alpha - 1) / 3


def fekete_szego_G_sharp(alpha: float, delta: complex) -> float:
    """Sharp bound ``(alpha-1)/3 * max(1, |3 - 2 alpha + 3 delta (alpha-1)|)`` on ``|a_3 - delta a_2^2|``.

    From ``a_2 = (1-alpha) c_1`` and ``a_3 = (1-alpha)(c_2 + (3-2 alpha) c_1^2)/3``
    for the Schwarz coefficients ``c_1, c_2``, together with
    ``|c_2 + mu c_1^2| <= max(1, |mu|)``.  Equality for ``z - z^2/2`` at alpha = 3/2
    and every delta with ``|mu| >= 1``; continuous in delta.
    """
    _check_alpha(alpha)
    mu = 3 - 2 * alpha + 3 * delta * (alpha - 1)
    return (alpha - 1) / 3 * max(1.0, abs(mu))


def fekete_szego_F(alpha: float, lambda_abs: float, delta_abs: float) -> float:
    """Bound ``2(alpha-1)|lambda|/3 + |delta||lambda|^2/4`` on ``|b_3 - delta b_2^2|`` (n = 1)."""
    return 2 * (alpha - 1) * lambda_abs / 3 + delta_abs * lambda_abs**2 / 4


# -- distortion and tails ---------------------------------------------------

def distortion_interval(r: float) -> tuple[float, float]:
    if not 0 <= r < 1:
        raise ValueError("r must lie in [0, 1)")
    return 1 - r, 1 + r


def pre_schwarz_deriv_bound(r: float) -> float:
    """Bound ``r/(1-r)`` on ``|z h''/h'|`` at ``|z| = r``."""
    if not 0 <= r < 1:
        raise ValueError("r must lie in [0, 1)")
    return r / (1 - r)


def lerch_phi(z_abs: float, s: float, a: float, max_terms: int = 1_000_000) -> float:
    """``sum_{k>=0} z^k/(k+a)^s`` for real ``0 <= z < 1`` and ``a > 0``.

    Summed until a term drops below ``1e-16`` times the running total.
    """
    if not 0 <= z_abs < 1:
        raise ValueError("z_abs must lie in [0, 1)")
    if a <= 0:
        raise ValueError("a must be positive")
    total = a ** (-s)
    zk = 1.0
    for k in range(1, max_terms):
        zk *= z_abs
        term = zk / (k + a) ** s
        total += term
        if term < 1e-16 * total:
            break
    return total


def tail_deriv_bound(n: int, r: float) -> float:
    """``r^n phi(r, 1, n)``, bounding ``|Sigma_n'(z)|`` for ``Sigma_n = sum_{k>n} a_k z^k``."""
    return r**n * lerch_phi(r, 1, n)


# -- growth and area --------------------------------------------------------

def growth_interval(params: ClassParams, r: float) -> tuple[float, float]:
    """Lower/upper bounds on ``|f(z)|`` at ``|z| = r``."""
    if not 0 <= r < 1:
        raise ValueError("r must lie in [0, 1)")
    lam, n = abs(params.lam), params.n
    lower = r * (lam * (r / (n + 2) - 1 / (n + 1)) * r**n - r / 2 + 1)
    upper = r * (lam * (r / (n + 2) + 1 / (n + 1)) * r**n + r / 2 + 1)
    return lower, upper


def _area_integral(lam2: float, n: int, r: float, sign: int) -> float:
    # 2 pi int_0^r (1 - lam2 xi^{2n}) (1 + sign*xi)^2 xi dxi, integrated termwise
    poly = {1: 1.0, 2: 2.0 * sign, 3: 1.0}
    total = 0.0
    for p, c in poly.items():
        total += c * r ** (p + 1) / (p + 1)
        total -= lam2 * c * r ** (p + 2 * n + 1) / (p + 2 * n + 1)
    return 2 * math.pi * total


def area_interval(params: ClassParams, r: float) -> tuple[float, float]:
    """Bounds on the area of ``f(|z| < r)``."""
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")
    lam2 = abs(params.lam) ** 2
    return _area_integral(lam2, params.n, r, -1), _area_integral(lam2, params.n, r, +1)


def _weighted_dirichlet(c: np.ndarray, r: float, p: int) -> float:
    # iint_{|z|<r} |z|^{2p} |sum c_m z^m|^2 = pi sum |c_m|^2 r^{2m+2p+2} / (m+p+1)
    m = np.arange(c.size)
    return float(math.pi * np.sum(np.abs(c) ** 2 * r ** (2 * m + 2 * p + 2) / (m + p + 1)))


def area_exact(f: HarmonicMapping, r: float) -> float:
    """Area of ``f(|z| < r)`` (with multiplicity) from the coefficients.

    Class members use ``(1 - |lambda|^2 |z|^{2n}) |h'|^2`` so that no
    coefficient of ``h'`` is lost to truncation of ``g``.
    """
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")
    hp = derivative(f.h).coeffs
    if f.params is not None:
        lam2 = abs(f.params.lam) ** 2
        return _weighted_dirichlet(hp, r, 0) - lam2 * _weighted_dirichlet(hp, r, f.params.n)
    return _weighted_dirichlet(hp, r, 0) - _weighted_dirichlet(derivative(f.g).coeffs, r, 0)


# -- verifiers ----------------------------------------------------------------

def _require_params(f: HarmonicMapping) -> ClassParams:
    if f.params is None:
        raise ValueError("bound checks need a class member (params present)")
    return f.params


def check_coeff_a(f: HarmonicMapping) -> BoundReport:
    """Worst index of ``|a_k| <= 2(alpha-1)/((k-1)k)``."""
    p = _require_params(f)
    k = np.arange(2, f.h.order + 1)
    bound = np.array([coeff_bound_a(int(j), p.alpha) for j in k])
    measured = np.abs(f.h.coeffs[2:])
    i = int(np.argmin(bound - measured))
    return BoundReport.compare(BoundId.CoeffA, {"k": int(k[i]), "alpha": p.alpha},
                               bound[i], measured[i])


def check_coeff_b(f: HarmonicMapping) -> BoundReport:
    """Worst index of the bounds on ``|b_{k+n}|``, plus the vanishing of ``b_1..b_n``."""
    p = _require_params(f)
    lam = abs(p.lam)
    rows = [(j, 0.0, abs(f.g[j])) for j in range(1, min(p.n, f.g.order) + 1)]
    for k in range(1, f.g.order - p.n + 1):
        rows.append((k + p.n, coeff_bound_b(k, p.n, p.alpha, lam), abs(f.g[k + p.n])))
    j, bound, measured = min(rows, key=lambda t: t[1] - t[2])
    return BoundReport.compare(BoundId.CoeffB, {"index": j, "n": p.n, "alpha": p.alpha,
                                                "lambda_abs": lam}, bound, measured)


def check_fekete_szego_F(f: HarmonicMapping, delta: float) -> BoundReport:
    p = _require_params(f)
    if p.n != 1:
        raise ValueError("the b-coefficient Fekete-Szego bound applies to n = 1 only")
    measured = abs(f.g[3] - delta * f.g[2] ** 2)
    bound = fekete_szego_F(p.alpha, abs(p.lam), abs(delta))
    return BoundReport.compare(BoundId.FeketeSzegoF, {"delta": delta, "alpha": p.alpha,
                                                      "lambda_abs": abs(p.lam)}, bound, measured)


def check_fekete_szego_G(f: HarmonicMapping, delta: float, piecewise: bool = False) -> BoundReport:
    """``|a_3 - delta a_2^2|`` against the sharp bound, or the piecewise one."""
    p = _require_params(f)
    measured = abs(f.h[3] - delta * f.h[2] ** 2)
    bound = fekete_szego_G(p.alpha, delta) if piecewise else fekete_szego_G_sharp(p.alpha, delta)
    return BoundReport.compare(BoundId.FeketeSzegoG, {"delta": delta, "alpha": p.alpha,
                                                      "piecewise": piecewise}, bound, measured)


def _circle(r: float, angles: int) -> np.ndarray:
    return r * np.exp(2j * np.pi * np.arange(angles) / angles)


def check_growth(f: HarmonicMapping, r: float, angles: int = 64) -> tuple[BoundReport, BoundReport]:
    p = _require_params(f)
    mod = np.abs(eval_mapping(f, _circle(r, angles)))
    lo, hi = growth_interval(p, r)
    prm = {"r": r, "n": p.n, "lambda_abs": abs(p.lam)}
    return (BoundReport.compare(BoundId.GrowthLower, prm, lo, mod.min()),
            BoundReport.compare(BoundId.GrowthUpper, prm, hi, mod.max()))


def check_area(f: HarmonicMapping, r: float) -> tuple[BoundReport, BoundReport]:
    p = _require_params(f)
    area = area_exact(f, r)
    lo, hi = area_interval(p, r)
    prm = {"r": r, "n": p.n, "lambda_abs": abs(p.lam)}
    return (BoundReport.compare(BoundId.AreaLower, prm, lo, area),
            BoundReport.compare(BoundId.AreaUpper, prm, hi, area))


def check_distortion(f: HarmonicMapping, r: float, angles: int = 64) -> tuple[BoundReport, BoundReport]:
    mod = np.abs(evaluate(derivative(f.h), _circle(r, angles)))
    lo, hi = distortion_interval(r)
    return (BoundReport.compare(BoundId.DistortLower, {"r": r}, lo, mod.min()),
            BoundReport.compare(BoundId.DistortUpper, {"r": r}, hi, mod.max()))


def check_tail_deriv(f: HarmonicMapping, n: int, r: float, angles: int = 64) -> BoundReport:
    """``max_{|z|=r} |Sigma_n'(z)|`` against ``r^n phi(r, 1, n)``."""
    tail = np.array(f.h.coeffs)
    tail[: n + 1] = 0
    k = np.arange(1, tail.size)
    dtail = k * tail[1:]
    z = _circle(r, angles)
    acc = np.zeros_like(z)
    for c in dtail[::-1]:
        acc = acc * z + c
    return BoundReport.compare(BoundId.TailDeriv, {"n": n, "r": r}, tail_deriv_bound(n, r),
                               float(np.abs(acc).max()))


DEFAULT_RADII = (0.25, 0.5, 0.75, 0.9)
ALL_CHECKS = ("coeff", "fekete-szego", "growth", "area", "distortion", "tail")
OPTIONAL_CHECKS = ("fekete-szego-a",)


def verify_mapping(f: HarmonicMapping, checks=ALL_CHECKS, radii=DEFAULT_RADII,
                   deltas=(1.0,), angles: int = 64) -> list[BoundReport]:
    """Run the requested bound checks and return one report per check instance."""
    reports: list[BoundReport] = []
    checks = tuple(checks)
    for name in checks:
        if name not in ALL_CHECKS + OPTIONAL_CHECKS:
            raise ValueError(f"unknown check {name!r}")
    if "coeff" in checks:
        reports += [check_coeff_a(f), check_coeff_b(f)]
    if "fekete-szego" in checks:
        reports += [check_fekete_szego_G(f, d) for d in deltas]
        if f.params is not None and f.params.n == 1:
            reports += [check_fekete_szego_F(f, d) for d in deltas]
    if "fekete-szego-a" in checks:
        reports += [check_fekete_szego_G(f, d, piecewise=True) for d in deltas]
    for r in radii:
        if "growth" in checks:
            reports += check_growth(f, r, angles)
        if "area" in checks:
            reports += check_area(f, r)
        if "distortion" in checks:
            reports += check_distortion(f, r, angles)
        if "tail" in checks:
            reports += [check_tail_deriv(f, n, r, angles) for n in (1, 2, 3)]
    return reports
