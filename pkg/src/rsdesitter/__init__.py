"""Massive spin-3/2 field in static de Sitter coordinates.

Exact constant matrices of the spherical tetrad gauge, half-integer Wigner
functions, the 16-component spherical-wave substitution with numerical
verification of every operator reduction, the radial first-order systems
(full, inversion-reduced, and their constraint rows), and an adaptive
integrator with singular-endpoint analysis.
"""

__version__ = "0.1.0"

from .ansatz import ModeLabel
from .geometry import RadialPoint
from .radial import (
    ConstraintSet,
    RadialSystem,
    build_A8,
    build_A16,
    constraint_matrix,
    parity_embed,
)
from .solver import IndicialData, SolutionTrace, endpoint_launch, frobenius, integrate
from .wigner import AngularCoefficients, angular_coefficients, wigner_D, wigner_d

__all__ = [
    "__version__",
    "AngularCoefficients",
    "ConstraintSet",
    "IndicialData",
    "ModeLabel",
    "RadialPoint",
    "RadialSystem",
    "SolutionTrace",
    "angular_coefficients",
    "build_A16",
    "build_A8",
    "constraint_matrix",
    "endpoint_launch",
    "frobenius",
    "integrate",
    "parity_embed",
    "wigner_D",
    "wigner_d",
]
