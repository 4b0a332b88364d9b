import json
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from qcharmonic.bounds import (
    BoundId,
    BoundReport,
    area_exact,
    area_interval,
    check_area,
    check_coeff_a,
    check_coeff_b,
    check_distortion,
    check_fekete_szego_F,
    check_fekete_szego_G,
    check_growth,
    check_tail_deriv,
    coeff_bound_a,
    coeff_bound_b,
    distortion_interval,
    fekete_szego_F,
    fekete_szego_G,
    fekete_szego_G_sharp,
    growth_interval,
    lerch_phi,
    pre_schwarz_deriv_bound,
    tail_deriv_bound,
    verify_mapping,
)
from qcharmonic.mapclass import ClassParams, HarmonicMapping, couple_g, heart_mapping, jacobian
from qcharmonic.series import ComplexSeries, evaluate


# -- coefficients ----------------------------------------------------------------

@pytest.mark.parametrize("k,alpha,expected", [(2, 1.5, 0.5), (3, 1.5, 1 / 6), (10, 1.2, 0.4 / 90)])
def test_coeff_bound_a_examples(k, alpha, expected):
    assert coeff_bound_a(k, alpha) == pytest.approx(expected, rel=1e-15)


def test_coeff_bound_a_rejects():
    with pytest.raises(ValueError):
        coeff_bound_a(1, 1.2)
    with pytest.raises(ValueError):
        coeff_bound_a(3, 1.6)


def test_coeff_bound_b_examples():
    assert coeff_bound_b(1, 1, 1.5, 0.5) == 0.25
    assert coeff_bound_b(4, 2, 1.3, 0) == 0
    # |b_3| = (2/3)|lambda||a_2| <= (2/3)(1/2)(1/2)
    assert coeff_bound_b(2, 1, 1.5, 0.5) == pytest.approx(1 / 6)


def test_coeff_bound_b_attained_by_heart():
    f = heart_mapping()
    assert abs(f.g[2]) == coeff_bound_b(1, 1, 1.5, 0.5)
    assert abs(f.g[3]) == pytest.approx(coeff_bound_b(2, 1, 1.5, 0.5), abs=1e-15)


@given(st.integers(2, 60), st.integers(1, 5), st.floats(1.0001, 1.5), st.floats(0, 1))
def test_coeff_bound_b_consistent_with_recurrence(k, n, alpha, frac):
    lam = frac / (n + 1)
    expected = lam * k * coeff_bound_a(k, alpha) / (k + n)
    assert coeff_bound_b(k, n, alpha, lam) == pytest.approx(expected, rel=1e-14, abs=1e-300)


def test_check_coeff_reports_heart():
    f = heart_mapping()
    a, b = check_coeff_a(f), check_coeff_b(f)
    assert a.satisfied and b.satisfied
    assert a.margin == pytest.approx(0, abs=1e-15)  # a_2 is extremal
    assert b.margin == pytest.approx(0, abs=1e-15)


def test_check_coeff_b_flags_mutation():
    f = heart_mapping()
    g = np.array(f.g.coeffs)
    g[2] *= 2
    bad = HarmonicMapping(f.h, ComplexSeries(g, f.g.order), f.params)
    rep = check_coeff_b(bad)
    assert not rep.satisfied
    assert rep.params["index"] == 2


# -- Fekete-Szego -------------------------------------------------------------------

def test_fekete_szego_G_examples():
    assert fekete_szego_G(1.5, 1) == pytest.approx(1 / 12)
    assert fekete_szego_G(1.5, 0) == pytest.approx(1 / 6)
    alpha = 1.2
    center = (3 - 2 * alpha) / (3 * (alpha - 1))
    assert fekete_szego_G(alpha, center) == pytest.approx((alpha - 1) / 3)


def test_fekete_szego_G_piecewise_branches_disagree_on_boundary():
    # at delta = -2/3 the outer branch gives (alpha-1)(7-4 alpha)/9, not (alpha-1)/3
    alpha = 1.25
    edge = -2 / 3
    outer = (alpha - 1) / 3 * abs(3 + edge - (2 + edge) * alpha)
    assert outer == pytest.approx((alpha - 1) * (7 - 4 * alpha) / 9)
    assert abs(outer - (alpha - 1) / 3) > 1e-2


def test_fekete_szego_G_sharp_continuous_at_branch_boundary(rng):
    for alpha in rng.uniform(1.001, 1.5, 20):
        center = -(3 - 2 * alpha) / (3 * (alpha - 1))
        half = 1 / (3 * (alpha - 1))
        for edge in (center - half, center + half):
            for d in (1e-9, -1e-9):
                assert fekete_szego_G_sharp(alpha, edge + d) == pytest.approx((alpha - 1) / 3,
                                                                               rel=1e-8)


@pytest.mark.parametrize("delta", [-2, -1, 0, 1, 2, 5])
def test_fekete_szego_G_sharp_attained_by_extremal(delta):
    h = ComplexSeries([0, 1, -0.5], 8)  # alpha = 3/2, Schwarz function z
    measured = abs(h[3] - delta * h[2] ** 2)
    bound = fekete_szego_G_sharp(1.5, delta)
    assert measured <= bound + 1e-15
    if abs(1.5 * delta) >= 1:
        assert measured == pytest.approx(bound)


def test_fekete_szego_G_piecewise_violated_by_extremal():
    f = heart_mapping()
    assert not check_fekete_szego_G(f, 1, piecewise=True).satisfied
    assert check_fekete_szego_G(f, 1).satisfied


def test_fekete_szego_F_examples():
    assert fekete_szego_F(1.5, 0.5, 1) == 11 / 48
    assert fekete_szego_F(1.3, 0, 2) == 0
    assert fekete_szego_F(1.5, 0.5, 0) == pytest.approx(1 / 6)


def test_fekete_szego_F_on_heart():
    f = heart_mapping()
    for delta in (-2, -1, 0, 1, 2):
        assert check_fekete_szego_F(f, delta).satisfied


def test_fekete_szego_F_rejects_n2():
    f = couple_g(ComplexSeries([0, 1], 8), ClassParams(1.2, 0.1, 2))
    with pytest.raises(ValueError):
        check_fekete_szego_F(f, 1)


# -- distortion, Lerch, tails ---------------------------------------------------------

def test_distortion_examples():
    assert distortion_interval(0) == (1, 1)
    assert pre_schwarz_deriv_bound(0) == 0
    assert distortion_interval(0.5) == (0.5, 1.5)
    assert pre_schwarz_deriv_bound(0.5) == 1


@pytest.mark.parametrize("r", [0.1, 0.5, 0.8])
def test_distortion_sharp_for_extremal(r):
    hp = ComplexSeries([1, -1])  # h = z - z^2/2
    assert abs(evaluate(hp, -r)) == pytest.approx(distortion_interval(r)[1])
    assert abs(r * -1 / evaluate(hp, r)) == pytest.approx(pre_schwarz_deriv_bound(r))


def test_distortion_check_heart():
    for rep in check_distortion(heart_mapping(), 0.7, 128):
        assert rep.satisfied
        assert rep.margin == pytest.approx(0, abs=1e-12)


def test_lerch_examples():
    assert lerch_phi(0, 1, 3) == 1 / 3
    assert lerch_phi(0.5, 1, 1) == pytest.approx(2 * math.log(2), rel=1e-14)


@pytest.mark.parametrize("r", [i / 10 for i in range(1, 10)])
def test_lerch_closed_form(r):
    assert abs(lerch_phi(r, 1, 1) - (-math.log1p(-r) / r)) < 1e-12


@pytest.mark.parametrize("z,s,a", [(0.3, 2, 1.5), (0.9, 1, 4), (0.75, 0.5, 2)])
def test_lerch_matches_mpmath(z, s, a):
    assert lerch_phi(z, s, a) == pytest.approx(float(mpmath.lerchphi(z, s, a)), rel=1e-13)


def test_lerch_rejects():
    with pytest.raises(ValueError):
        lerch_phi(1.0, 1, 1)
    with pytest.raises(ValueError):
        lerch_phi(0.5, 1, 0)


def test_tail_deriv_bound_holds_for_extremal():
    f = heart_mapping(64)
    for n in (1, 2, 3):
        for r in (0.3, 0.6, 0.9):
            assert check_tail_deriv(f, n, r).satisfied


# -- growth ---------------------------------------------------------------------

def test_growth_lambda_zero():
    lo, hi = growth_interval(ClassParams(1.3, 0, 2), 0.4)
    assert lo == pytest.approx(0.4 - 0.08)
    assert hi == pytest.approx(0.4 + 0.08)


def test_growth_small_r():
    lo, hi = growth_interval(ClassParams(1.5, 0.5, 1), 1e-8)
    assert lo == pytest.approx(1e-8, rel=1e-7)
    assert hi == pytest.approx(1e-8, rel=1e-7)


def test_growth_hand_example():
    lo, hi = growth_interval(ClassParams(1.5, 0.5, 1), 0.5)
    # 1/2 [1/2 (1/6 - 1/2) 1/2 - 1/4 + 1] = 1/2 [-1/12 + 3/4]
    assert lo == pytest.approx(0.5 * (0.5 * (1 / 6 - 0.5) * 0.5 - 0.25 + 1))
    assert lo == pytest.approx(1 / 3)
    assert hi == pytest.approx(0.5 * (0.5 * (1 / 6 + 0.5) * 0.5 + 0.25 + 1))


@pytest.mark.parametrize("n,lam,r", [(1, 0.5, 0.5), (2, 0.3, 0.8), (3, 0.1 + 0.1j, 0.35)])
def test_growth_matches_integral(n, lam, r):
    p = ClassParams(1.4, lam, n)
    la = abs(lam)
    lo, _ = quad(lambda x: (1 - x) * (1 - la * x**n), 0, r, epsabs=1e-14)
    hi, _ = quad(lambda x: (1 + x) * (1 + la * x**n), 0, r, epsabs=1e-14)
    glo, ghi = growth_interval(p, r)
    assert glo == pytest.approx(lo, abs=1e-13)
    assert ghi == pytest.approx(hi, abs=1e-13)


def test_growth_check_heart():
    f = heart_mapping()
    for r in (0.25, 0.5, 0.9):
        lo, hi = check_growth(f, r, 256)
        assert lo.satisfied and hi.satisfied


# -- area -------------------------------------------------------------------------

@pytest.mark.parametrize("lam", [0.5, 0.3j, 0])
@pytest.mark.parametrize("r", [0.2, 0.6, 0.95])
def test_area_identity_map(lam, r):
    f = couple_g(ComplexSeries([0, 1], 16), ClassParams(1.2, lam, 1))
    expected = math.pi * r**2 - math.pi * abs(lam) ** 2 * r**4 / 2
    assert area_exact(f, r) == pytest.approx(expected, rel=1e-14)
    lo, hi = area_interval(f.params, r)
    assert lo <= expected <= hi


def test_area_interval_matches_integral():
    p = ClassParams(1.4, 0.3, 2)
    r = 0.7
    for sign, got in zip((-1, 1), area_interval(p, r)):
        ref, _ = quad(lambda x: 2 * math.pi * (1 - 0.09 * x**4) * (1 + sign * x) ** 2 * x, 0, r,
                      epsabs=1e-14)
        assert got == pytest.approx(ref, abs=1e-13)


def jacobian_area(f, r, grid=512):
    # midpoint rule in polar coordinates
    dr, dt = r / grid, 2 * math.pi / grid
    rho = (np.arange(grid) + 0.5) * dr
    t = (np.arange(grid) + 0.5) * dt
    z = (rho[:, None] * np.exp(1j * t)[None, :])
    return float(np.sum(jacobian(f, z) * rho[:, None]) * dr * dt)


def test_area_exact_matches_quadrature_heart():
    f = heart_mapping()
    assert area_exact(f, 0.5) == pytest.approx(jacobian_area(f, 0.5), rel=1e-4)


def test_area_free_form_uses_g():
    h = ComplexSeries([0, 1], 6)
    g = ComplexSeries([0, 0, 0.25], 6)
    f = HarmonicMapping(h, g)
    assert area_exact(f, 0.5) == pytest.approx(math.pi * 0.25 - math.pi * 0.25 * 0.5**4 / 2)


def test_area_check_heart():
    for rep in check_area(heart_mapping(), 0.75):
        assert rep.satisfied


# -- reports -------------------------------------------------------------------------

def test_report_upper_and_lower():
    up = BoundReport.compare(BoundId.CoeffA, {}, 1.0, 1.0 + 5e-10)
    assert up.satisfied and up.margin == pytest.approx(-5e-10)
    assert not BoundReport.compare(BoundId.CoeffA, {}, 1.0, 1.0 + 2e-9).satisfied
    low = BoundReport.compare("GrowthLower", {}, 1.0, 0.9999999995)
    assert low.satisfied and low.is_lower
    assert not BoundReport.compare("GrowthLower", {}, 1.0, 0.99).satisfied


def test_report_json_schema():
    rep = BoundReport.compare(BoundId.AreaUpper, {"r": 0.5}, 2.0, 1.5)
    d = json.loads(rep.to_json())
    assert d == {"bound_id": "AreaUpper", "params": {"r": 0.5}, "bound": 2.0, "measured": 1.5,
                 "satisfied": True, "margin": 0.5}
    assert json.loads(BoundReport(BoundId.CoeffA, {}, 0.5).to_json())["measured"] is None


def test_verify_mapping_heart_all_pass():
    reports = verify_mapping(heart_mapping())
    assert reports and all(rep.satisfied for rep in reports)
    assert {rep.bound_id for rep in reports} >= {BoundId.CoeffA, BoundId.CoeffB, BoundId.AreaLower,
                                                 BoundId.GrowthUpper, BoundId.FeketeSzegoF,
                                                 BoundId.FeketeSzegoG}


def test_verify_mapping_unknown_check():
    with pytest.raises(ValueError):
        verify_mapping(heart_mapping(), ["nope"])


def test_tail_bound_value():
    assert tail_deriv_bound(1, 0.5) == pytest.approx(2 * math.log(2) * 0.5)
