"""Quasiconformal close-to-convex harmonic mappings of the class F(alpha, lambda, n).

Truncated power-series arithmetic (:mod:`.series`), construction of class
members (:mod:`.mapclass`), closed-form bounds and their verifiers
(:mod:`.bounds`), partial-sum radii (:mod:`.radii`) and the numeric kernels
they share (:mod:`.numerics`).
"""
from .bounds import (
    BoundId,
    BoundReport,
    area_exact,
    area_interval,
    coeff_bound_a,
    coeff_bound_b,
    distortion_interval,
    fekete_szego_F,
    fekete_szego_G,
    fekete_szego_G_sharp,
    growth_interval,
    lerch_phi,
    pre_schwarz_deriv_bound,
    verify_mapping,
)
from .mapclass import (
    ClassParams,
    HarmonicMapping,
    SchwarzFunction,
    collision_pair,
    counterexample_h,
    couple_g,
    dilatation,
    eval_mapping,
    extremal_h,
    from_schwarz,
    jacobian,
    qc_constant,
)
from .numerics import Bracket, bisect, quad_adaptive
from .radii import (
    PartialSum,
    RadiusReport,
    eval_gamma_deriv,
    partial_sum,
    radius_cc,
    solve_radius,
    tail_bound_delta,
    verify_cc_radius,
)
from .series import ComplexSeries, antiderivative, derivative, evaluate, exp_series, log_series

__version__ = "0.1.0"
