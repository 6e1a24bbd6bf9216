"""Exact p-adic arithmetic and the dynamics of f(x) = a*x/(x^2 + a)."""

from . import errors
from .cycles import (
    AttractionReport,
    SwapReport,
    TwoCycleContext,
    cycle_attraction_check_p3,
    cycle_sphere_swap_check,
    p2_membership,
    solve_two_cycle,
    verify_cycle_norms,
)
from .dynamics import MapContext, OrbitEntry, OrbitRecord, Termination, iterate_orbit
from .ergodic import (
    ErgodicityReport,
    MinimalBallCertificate,
    displacement_certificate,
    displacement_radius,
    ergodicity_report,
    haar_measure_ball,
    minimal_invariant_ball,
)
from .geometry import (
    BallDescriptor,
    ExclusionVerdict,
    InvariantSphereReport,
    SphereDescriptor,
    ball_image_check,
    exclusion_membership,
    invariant_sphere_test,
    siegel_disk,
    siegel_disk_certificate,
)
from .hensel import (
    extension_generator,
    is_square,
    mod_sqrt,
    quadratic_extension,
    sqrt,
    sqrt_in_field,
)
from .literals import parse_literal, parse_rational, to_literal
from .norms import NormUpperBound, NormValue, parse_radius
from .number import (
    DEFAULT_PRECISION,
    FieldDescriptor,
    PadicNumber,
    Qp,
    distance,
    is_prime,
    same_to_precision,
    value_group_denominator,
)
from .radius import (
    RadiusOracle,
    cycle_distance_map_p3,
    radius_image,
    radius_law_check,
    radius_limit,
)
from .reduction import (
    ConjugationResult,
    FixedPointReport,
    RationalMapParams,
    conjugate_reduce,
    unique_fixed_point_test,
)
from .sampling import RandomSource, sample_in_ball, sample_on_sphere

__version__ = "0.1.0"

__all__ = [
    "AttractionReport",
    "BallDescriptor",
    "ConjugationResult",
    "DEFAULT_PRECISION",
    "ErgodicityReport",
    "ExclusionVerdict",
    "FieldDescriptor",
    "FixedPointReport",
    "InvariantSphereReport",
    "MapContext",
    "MinimalBallCertificate",
    "NormUpperBound",
    "NormValue",
    "OrbitEntry",
    "OrbitRecord",
    "PadicNumber",
    "Qp",
    "RadiusOracle",
    "RandomSource",
    "RationalMapParams",
    "SphereDescriptor",
    "SwapReport",
    "Termination",
    "TwoCycleContext",
    "ball_image_check",
    "conjugate_reduce",
    "cycle_attraction_check_p3",
    "cycle_distance_map_p3",
    "cycle_sphere_swap_check",
    "displacement_certificate",
    "displacement_radius",
    "distance",
    "ergodicity_report",
    "errors",
    "exclusion_membership",
    "extension_generator",
    "haar_measure_ball",
    "invariant_sphere_test",
    "is_prime",
    "is_square",
    "iterate_orbit",
    "minimal_invariant_ball",
    "mod_sqrt",
    "p2_membership",
    "parse_literal",
    "parse_radius",
    "parse_rational",
    "quadratic_extension",
    "radius_image",
    "radius_law_check",
    "radius_limit",
    "sample_in_ball",
    "sample_on_sphere",
    "same_to_precision",
    "siegel_disk",
    "siegel_disk_certificate",
    "solve_two_cycle",
    "sqrt",
    "sqrt_in_field",
    "to_literal",
    "unique_fixed_point_test",
    "value_group_denominator",
    "verify_cycle_norms",
]
