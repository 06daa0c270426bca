"""Variable-exponent moduli of curve families in annuli and cylinders.

The extremal density for the family of curves joining the two boundary
components has a closed form up to one scalar, the Lagrange multiplier of
the unit-integral normalization.  This package evaluates those densities,
solves the multiplier by bisection, computes the resulting moduli, compares
them against explicit test-density upper bounds, and cross-checks every
analytic number with a discrete variational oracle.
"""

from .annulus import (
    AnnulusProblem,
    ExtremalSolution,
    SweepRow,
    capacity_upper_via_potential,
    constant_exponent_modulus,
    log_density_upper_bound,
    modulus_sweep,
    normalization_value,
    radial_potential,
    solve_annulus,
    unit_sphere_area,
)
from .cylinder import (
    CylinderProblem,
    constant_density_upper_bound,
    cylinder_normalization_value,
    extremality_gap,
    solve_cylinder,
)
from .exponent import (
    DomainError,
    ExponentFunction,
    ExponentRangeError,
    ParseError,
    log_holder_constant_estimate,
    parse_exponent,
)
from .quadrature import (
    IntervalTooFine,
    NonFiniteIntegrand,
    QuadratureConfig,
    integrate,
    realized_step,
    subinterval_count,
)
from .rootfind import (
    BisectionConfig,
    BisectionResult,
    BracketFailure,
    MaxItersExceeded,
    solve_increasing,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AnnulusProblem",
    "BisectionConfig",
    "BisectionResult",
    "BracketFailure",
    "CylinderProblem",
    "DomainError",
    "ExponentFunction",
    "ExponentRangeError",
    "ExtremalSolution",
    "IntervalTooFine",
    "MaxItersExceeded",
    "NonFiniteIntegrand",
    "ParseError",
    "QuadratureConfig",
    "SweepRow",
    "capacity_upper_via_potential",
    "constant_density_upper_bound",
    "constant_exponent_modulus",
    "cylinder_normalization_value",
    "extremality_gap",
    "integrate",
    "log_density_upper_bound",
    "log_holder_constant_estimate",
    "modulus_sweep",
    "normalization_value",
    "parse_exponent",
    "radial_potential",
    "realized_step",
    "solve_annulus",
    "solve_cylinder",
    "solve_increasing",
    "subinterval_count",
    "unit_sphere_area",
]
