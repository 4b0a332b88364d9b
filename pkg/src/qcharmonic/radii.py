"""Radii of close-to-convexity for partial sums of members of F(alpha, lambda).

The four proof cases split the partial sums ``S_{m,l}`` by ``(m, l)``:

====  ==================  ======================================
case  truncations         radius equation (root in (0, 1))
====  ==================  ======================================
R1    m <= 2, l = 2       ``2 - 3r = 0``  (r = 2/3)
R2    m >= 3, l >= 3      ``2 + 2 ln(1-r) + r ln(1-r) - r + r^2``
R3    m <= 2, l >= 3      ``2 - 2r + r ln(1-r)``
R4    m >= 3, l = 2       ``2 - r + 2 ln(1-r) + r^2``
====  ==================  ======================================

Half of each left-hand side is the lower bound on ``Re Gamma'_{m,l}`` at
``|z| = r`` derived in that case.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .bounds import BoundId, BoundReport
from .mapclass import HarmonicMapping
from .numerics import bisect, first_sign_change
from .series import check_disk

SCAN_STEP = 1e-3
BISECT_TOL = 1e-13
CC_THRESHOLD = 1e-6


class RadiusEquation(str, Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R4 = "R4"
    RC = "RC"


def _log1m(r: float) -> float:
    return math.log1p(-r)


EQUATIONS: dict[RadiusEquation, Callable[[float], float]] = {
    RadiusEquation.R1: lambda r: 2 - 3 * r,
    RadiusEquation.R2: lambda r: 2 + 2 * _log1m(r) + r * _log1m(r) - r + r * r,
    RadiusEquation.R3: lambda r: 2 - 2 * r + r * _log1m(r),
    RadiusEquation.R4: lambda r: 2 - r + 2 * _log1m(r) + r * r,
}

CASE_PAIRS = {
    # (predicate on m, predicate on l)
    RadiusEquation.R1: (lambda m: m <= 2, lambda l: l == 2),
    RadiusEquation.R2: (lambda m: m >= 3, lambda l: l >= 3),
    RadiusEquation.R3: (lambda m: m <= 2, lambda l: l >= 3),
    RadiusEquation.R4: (lambda m: m >= 3, lambda l: l == 2),
}


def case_of(m: int, l: int) -> RadiusEquation:
    """Proof case covering the partial sum ``S_{m,l}``."""
    if m < 1 or l < 2:
        raise ValueError("need m >= 1 and l >= 2")
    for eq, (pm, pl) in CASE_PAIRS.items():
        if pm(m) and pl(l):
            return eq
    raise AssertionError("cases are exhaustive")


def case_lower_bound(equation, r: float) -> float:
    """Lower bound on ``Re Gamma'_{m,l}`` at ``|z| = r`` for the given case."""
    return 0.5 * EQUATIONS[RadiusEquation(equation)](r)


@dataclass(frozen=True)
class RadiusReport:
    equation_id: RadiusEquation
    root: float
    residual: float
    bracket: tuple[float, float]
    iterations: int
    scan_step: float = SCAN_STEP
    source: RadiusEquation | None = None

    def to_dict(self) -> dict:
        d = {
            "equation": self.equation_id.value,
            "root": self.root,
            "residual": self.residual,
            "bracket": list(self.bracket),
            "iterations": self.iterations,
            "scan_step": self.scan_step,
        }
        if self.source is not None:
            d["source"] = self.source.value
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def solve_radius(equation_id) -> RadiusReport:
    """Least positive root in (0, 1) of the named radius equation."""
    eq = RadiusEquation(equation_id)
    if eq is RadiusEquation.RC:
        return radius_cc_report()
    f = EQUATIONS[eq]
    b = first_sign_change(f, 0.0, 1.0, SCAN_STEP)
    if eq is RadiusEquation.R1:
        root = 2 / 3
        return RadiusReport(eq, root, abs(f(root)), (b.lo, b.hi), 0)
    root, residual, it = bisect(f, b, BISECT_TOL)
    return RadiusReport(eq, root, residual, (b.lo, b.hi), it)


def radius_cc_report() -> RadiusReport:
    reports = [solve_radius(e) for e in (RadiusEquation.R1, RadiusEquation.R2,
                                         RadiusEquation.R3, RadiusEquation.R4)]
    best = min(reports, key=lambda rep: rep.root)
    return RadiusReport(RadiusEquation.RC, best.root, best.residual, best.bracket,
                        best.iterations, best.scan_step, best.equation_id)


def radius_cc() -> float:
    """Radius of close-to-convexity shared by all partial sums (the R2 root)."""
    return radius_cc_report().root


def tail_bound_delta(n: int, r: float) -> float:
    """``-ln(1-r) - sum_{k<n} r^k/k``, i.e. ``sum_{k>=n} r^k/k``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 0 <= r < 1:
        raise ValueError("r must lie in [0, 1)")
    return -_log1m(r) - sum(r**k / k for k in range(1, n))


# -- partial sums -------------------------------------------------------------

@dataclass(frozen=True)
class PartialSum:
    """``S_{m,l}(f) = sum_{k<=m} a_k z^k + conj(sum_{2<=k<=l} b_k z^k)``."""

    m: int
    l: int
    base: HarmonicMapping

    def __post_init__(self):
        if self.m < 1 or self.l < 2:
            raise ValueError("need m >= 1 and l >= 2")
        if self.m > self.base.h.order:
            raise ValueError(f"m = {self.m} exceeds the stored order {self.base.h.order} of h")
        if self.l > self.base.g.order:
            raise ValueError(f"l = {self.l} exceeds the stored order {self.base.g.order} of g")

    def analytic_coeffs(self) -> np.ndarray:
        return self.base.h.coeffs[: self.m + 1]

    def coanalytic_coeffs(self) -> np.ndarray:
        c = np.array(self.base.g.coeffs[: self.l + 1])
        c[:2] = 0
        return c

    def __call__(self, z):
        zz = check_disk(z)
        return _polyval(self.analytic_coeffs(), zz) + np.conj(_polyval(self.coanalytic_coeffs(), zz))


def partial_sum(f: HarmonicMapping, m: int, l: int) -> PartialSum:
    return PartialSum(m, l, f)


def _polyval(c: np.ndarray, z):
    acc = np.zeros(np.shape(z), dtype=np.complex128)
    for coef in c[::-1]:
        acc = acc * z + coef
    return acc


def _dpolyval(c: np.ndarray, z):
    k = np.arange(1, c.size)
    return _polyval(k * c[1:], z)


def eval_gamma_deriv(p: PartialSum, epsilon: complex, z):
    """Derivative at ``z`` of ``sum_{k<=m} a_k z^k + epsilon sum_{2<=k<=l} b_k z^k``."""
    if abs(abs(epsilon) - 1) > 1e-12:
        raise ValueError("epsilon must have modulus 1")
    zz = check_disk(z)
    out = _dpolyval(p.analytic_coeffs(), zz) + epsilon * _dpolyval(p.coanalytic_coeffs(), zz)
    return complex(out) if np.ndim(out) == 0 else out


def _grid(r: float, angles: int, radii: int) -> np.ndarray:
    rad = np.linspace(r / radii, r, radii)
    t = 2 * np.pi * np.arange(angles) / angles
    return (rad[:, None] * np.exp(1j * t)[None, :]).ravel()


def _roots_of_unity(k: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(k) / k)


def _cumulative_derivs(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    # column j holds the derivative of sum_{k<=j} c_k z^k at every z
    k = np.arange(c.size)
    terms = np.zeros((z.size, c.size), dtype=np.complex128)
    terms[:, 1:] = (k[1:] * c[1:])[None, :] * z[:, None] ** (k[1:] - 1)[None, :]
    return np.cumsum(terms, axis=1)


def _min_report(re_a, b, eps, z, m, l, r, threshold) -> BoundReport:
    vals = re_a[:, None] + (b[:, None] * eps[None, :]).real
    i, j = np.unravel_index(np.argmin(vals), vals.shape)
    measured = float(vals[i, j])
    params = {"m": m, "l": l, "r": r, "case": case_of(m, l).value}
    rep = BoundReport.compare(BoundId.PartialSumCC, params, threshold, measured, slack=0.0,
                              witness_z=[float(z[i].real), float(z[i].imag)],
                              witness_epsilon=[float(eps[j].real), float(eps[j].imag)])
    if measured <= threshold:
        rep.satisfied = False
    return rep


def verify_cc_radius(f: HarmonicMapping, m: int, l: int, r: float, angles: int = 128,
                     eps_samples: int = 64, radii: int = 32,
                     threshold: float = CC_THRESHOLD) -> BoundReport:
    """Sampled minimum of ``Re Gamma'_{m,l}`` over ``|z| <= r`` and sampled ``epsilon``.

    ``Re Gamma' > 0`` on a disk makes every ``h + epsilon g`` partial sum
    close-to-convex there; the report is satisfied when the sampled minimum
    exceeds ``threshold``.  This is a sampling check, not a certificate.
    """
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")
    p = PartialSum(m, l, f)
    z = _grid(r, angles, radii)
    re_a = _dpolyval(p.analytic_coeffs(), z).real
    b = _dpolyval(p.coanalytic_coeffs(), z)
    return _min_report(re_a, b, _roots_of_unity(eps_samples), z, m, l, r, threshold)


def verify_cc_many(f: HarmonicMapping, pairs, r: float, angles: int = 128, eps_samples: int = 64,
                   radii: int = 32, threshold: float = CC_THRESHOLD) -> list[BoundReport]:
    """:func:`verify_cc_radius` for many ``(m, l)`` pairs sharing one grid."""
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")
    pairs = list(pairs)
    for m, l in pairs:
        PartialSum(m, l, f)
    z = _grid(r, angles, radii)
    eps = _roots_of_unity(eps_samples)
    mmax = max(m for m, _ in pairs)
    lmax = max(l for _, l in pairs)
    da = _cumulative_derivs(f.h.coeffs[: mmax + 1], z).real
    gc = np.array(f.g.coeffs[: lmax + 1])
    gc[:2] = 0
    db = _cumulative_derivs(gc, z)
    return [_min_report(da[:, m], db[:, l], eps, z, m, l, r, threshold) for m, l in pairs]


def case_pairs(equation, max_index: int, sample=None) -> list[tuple[int, int]]:
    """All ``(m, l)`` with ``m, l <= max_index`` belonging to a proof case.

    ``sample`` optionally restricts the unbounded index ranges to the given values.
    """
    eq = RadiusEquation(equation)
    pm, pl = CASE_PAIRS[eq]
    idx = range(1, max_index + 1) if sample is None else sorted(set(sample) | {1, 2, 3})
    return [(m, l) for m in idx for l in idx if l >= 2 and pm(m) and pl(l) and m <= max_index
            and l <= max_index]
