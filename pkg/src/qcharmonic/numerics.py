"""Bracketed bisection and adaptive Simpson quadrature."""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Callable


class BracketError(ValueError):
    pass


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class Bracket:
    """Interval ``[lo, hi]`` on which ``f`` changes sign."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise BracketError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if not self.f_lo * self.f_hi < 0:
            raise BracketError(
                f"no sign change on [{self.lo}, {self.hi}]: f = {self.f_lo:.3g}, {self.f_hi:.3g}"
            )

    @classmethod
    def of(cls, f: Callable[[float], float], lo: float, hi: float) -> "Bracket":
        return cls(lo, hi, f(lo), f(hi))


def bisect(f: Callable[[float], float], b: Bracket, tol: float = 1e-13) -> tuple[float, float, int]:
    """Halve ``b`` until ``hi - lo <= tol``.

    Returns ``(root, |f(root)|, iterations)`` with ``root`` the final midpoint.
    An exact zero at a midpoint ends the search early.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    lo, hi, f_lo = b.lo, b.hi, b.f_lo
    it = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:  # interval below float resolution
            break
        f_mid = f(mid)
        it += 1
        if f_mid == 0:
            return mid, 0.0, it
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    return root, abs(f(root)), it


def first_sign_change(f: Callable[[float], float], lo: float, hi: float, step: float) -> Bracket:
    """Scan ``[lo, hi)`` in steps of ``step`` and return the first sign-change bracket."""
    n = int(math.floor((hi - lo) / step))
    x0, f0 = lo, f(lo)
    for i in range(1, n + 1):
        x1 = lo + i * step
        if x1 >= hi:
            break
        f1 = f(x1)
        if f0 * f1 < 0:
            return Bracket(x0, x1, f0, f1)
        if f1 == 0:
            # bracket the exact zero symmetrically
            x2 = min(x1 + step, 0.5 * (x1 + hi))
            return Bracket(x0, x2, f0, f(x2))
        x0, f0 = x1, f1
    raise BracketError(f"no sign change found on [{lo}, {hi}) with step {step}")


def quad_adaptive(f: Callable[[float], float], a: float, b: float, tol: float = 1e-12,
                  max_depth: int = 50, min_depth: int = 2) -> float:
    """Adaptive Simpson rule with absolute tolerance ``tol``.

    Each panel is exact for cubics.  A panel is also accepted once its error
    estimate is at the rounding level of its value.  Raises :class:`QuadratureError` when a
    panel needs more than ``max_depth`` halvings.
    """
    if a > b:
        raise ValueError("need a <= b")
    if a == b:
        return 0.0

    def simpson(fa, fm, fb, a, b):
        return (b - a) / 6 * (fa + 4 * fm + fb)

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, a, m)
        right = simpson(fm, frm, fb, m, b)
        delta = left + right - whole
        # below this the panel difference is rounding noise
        floor = 8 * sys.float_info.epsilon * abs(left + right)
        if depth >= min_depth and abs(delta) <= 15 * max(tol, floor):
            return left + right + delta / 15
        if depth >= max_depth:
            raise QuadratureError(f"adaptive Simpson did not converge on [{a}, {b}]")
        return (recurse(a, m, fa, flm, fm, left, tol / 2, depth + 1)
                + recurse(m, b, fm, frm, fb, right, tol / 2, depth + 1))

    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    return recurse(a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 0)
