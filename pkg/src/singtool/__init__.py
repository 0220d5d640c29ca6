"""Singularities of hodograph plane-into-plane mappings.

Elementary Schur polynomials, heat-hierarchy potentials, the Jordan (parabolic)
hodograph map with its order-k classification and regularization, and the
strictly hyperbolic contrast case.
"""
__version__ = "0.1.0"

from .classifier import (
    classify,
    curvature_exponent,
    image_curve,
    multiplicity,
    multitime_map,
    normal_form,
    scaling_exponents_fit,
    singular_locus,
    tangent_rotation,
)
from .heat import Spectral, TauSeries, deform, heat_residual, recenter, w_ladder, w_partial
from .hyperbolic import (
    HyperbolicModel,
    hyp_classify,
    hyp_jacobian,
    hyp_residual,
    hyp_whitney_ladder,
    hyp_x_from_t,
    weakly_nonlinear_probe,
)
from .parabolic import (
    LambdaSystem,
    PlaneMap,
    compatibility_residuals,
    generic_map,
    image_grid,
    jordan_jacobian,
    jordan_map,
    solution_derivatives,
    trace_singular_curve,
    whitney_field,
    whitney_iterate,
)
from .polynomial import SparsePoly
from .regularize import (
    classify_N,
    jacobian_block,
    multi_time_map,
    normal_form_N,
    partial_regularization,
    regularize_normal_form,
    solve_surface_point,
    surface_map,
    surface_residuals,
    symmetry_map,
)
from .schur import esp_eval, esp_ladder, esp_poly, factor_esp, hermite_roots
