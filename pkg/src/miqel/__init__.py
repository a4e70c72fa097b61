"""miqel: certified approximation of indefinite quadratics over mixed integer
points in ellipsoids and polyhedra, in exact rational arithmetic."""

from .rationals import (
    Rat,
    rat,
    parse_rat,
    rat_str,
    sqrt_bounds,
    sqrt_lower_multiplicative,
)
from .linalg import (
    QuadraticObjective,
    NotPositiveDefiniteError,
    ldlt_decompose,
    vec,
    mat,
)

__all__ = [
    "Rat",
    "rat",
    "parse_rat",
    "rat_str",
    "sqrt_bounds",
    "sqrt_lower_multiplicative",
    "QuadraticObjective",
    "NotPositiveDefiniteError",
    "ldlt_decompose",
    "vec",
    "mat",
]
