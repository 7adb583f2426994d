"""Bregman distances, farthest-point maps, and tie geometry over finite sets.

The package ships a small catalog of separable Legendre-type convex
functions (quadratic energy, Shannon entropy, signed p-th power, and a
programmatic custom member), the asymmetric distances they induce, left and
right farthest-point machinery with a dual route through the conjugate,
variational calculus of the farthest-distance function, a tie-point search
certifying that only singletons have everywhere-unique farthest points,
grid rasterization, and a verification suite runner exposed both in-process
and as the ``bregfar`` command-line tool.
"""

from .errors import (BregfarError, DimensionMismatch, DomainViolation,
                     HessianUndefined, MultivaluedGradient, NonConvergence,
                     PointSetError, SameWitness)
from .farthest import (DEFAULT_TIE_TOL, FarthestResult, TieWitness,
                       bregman_distance, check_farthest_characterization,
                       find_tie, left_distances, left_farthest,
                       left_farthest_batch, monotonicity_gap, ray_point,
                       right_distances, right_farthest_direct,
                       right_farthest_dual)
from .grid import (FieldRaster, GridSpec, gray_level, rasterize_field,
                   write_field_csv, write_label_pgm)
from .legendre import (DomainDescriptor, LegendreFunction, energy,
                       from_config, p_power, separable_custom, shannon)
from .pointset import PointSet, load_point_array, load_points
from .scalar import (ConjugateScalar, CustomScalar, EntropyScalar,
                     PowerScalar, QuadraticScalar, ScalarConvex,
                     invert_increasing)
from .variational import (GradientResult, SubderivativeEstimate,
                          ThetaConvexitySearch, clarke_subdifferential_support,
                          dini_subderivative, gradient_farthest_distance,
                          neg_restricted_conjugate,
                          subdifferential_inverse_check, theta,
                          theta_conjugate, theta_convexity_falsifier,
                          theta_midpoint_scan)
from .verify import (SuiteResult, SuiteSizes, Tolerances, catalog_roster,
                     construct_tie, report_to_json, run_verification,
                     sample_interior, sample_pointset, smooth_roster)

__version__ = "0.1.0"

__all__ = [
    "BregfarError", "DimensionMismatch", "DomainViolation",
    "HessianUndefined", "MultivaluedGradient", "NonConvergence",
    "PointSetError", "SameWitness",
    "DEFAULT_TIE_TOL", "FarthestResult", "TieWitness", "bregman_distance",
    "check_farthest_characterization", "find_tie", "left_distances",
    "left_farthest", "left_farthest_batch", "monotonicity_gap", "ray_point",
    "right_distances", "right_farthest_direct", "right_farthest_dual",
    "FieldRaster", "GridSpec", "gray_level", "rasterize_field",
    "write_field_csv", "write_label_pgm",
    "DomainDescriptor", "LegendreFunction", "energy", "from_config",
    "p_power", "separable_custom", "shannon",
    "PointSet", "load_point_array", "load_points",
    "ConjugateScalar", "CustomScalar", "EntropyScalar", "PowerScalar",
    "QuadraticScalar", "ScalarConvex", "invert_increasing",
    "GradientResult", "SubderivativeEstimate", "ThetaConvexitySearch",
    "clarke_subdifferential_support", "dini_subderivative",
    "gradient_farthest_distance", "neg_restricted_conjugate",
    "subdifferential_inverse_check", "theta", "theta_conjugate",
    "theta_convexity_falsifier", "theta_midpoint_scan",
    "SuiteResult", "SuiteSizes", "Tolerances", "catalog_roster",
    "construct_tie", "report_to_json", "run_verification", "sample_interior",
    "sample_pointset", "smooth_roster",
    "__version__",
]
