"""Semi-Hilbertian operator invariants.

Weighted (A-)seminorms, numerical ranges, maximal numerical ranges, spectral
radii, centers of mass and distance-to-scalars for complex matrices under a
positive semidefinite weight, plus a property-verification harness.
"""

from semihilbert._core import (
    NotABoundedError,
    NotHermitianError,
    NotPositiveError,
    RangeNotIncludedError,
    ZeroWeightError,
    a_adjoint,
    campaign,
    center_of_mass,
    distance_formula,
    is_a_bounded,
    m_max,
    max_numerical_range,
    normaloid,
    numerical_radius,
    numerical_range,
    omega_max,
    reduced,
    seminorm,
    spectral_radius,
    svg,
    verify,
)

__all__ = [
    "NotABoundedError",
    "NotHermitianError",
    "NotPositiveError",
    "RangeNotIncludedError",
    "ZeroWeightError",
    "a_adjoint",
    "campaign",
    "center_of_mass",
    "distance_formula",
    "is_a_bounded",
    "m_max",
    "max_numerical_range",
    "normaloid",
    "numerical_radius",
    "numerical_range",
    "omega_max",
    "reduced",
    "seminorm",
    "spectral_radius",
    "svg",
    "verify",
]
