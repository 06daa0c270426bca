"""Moduli of the end-to-end curve family of a finite cylinder.

With an exponent depending only on the axial coordinate, the problem reduces
to one dimension over [0, L]; the cross-section enters through its measure
alone.  Same solution scheme as the annulus: explicit density with one scalar
multiplier, normalization solved by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .annulus import ExtremalSolution
from .exponent import ExponentFunction
from .quadrature import QuadratureConfig, integrate
from .rootfind import BisectionConfig, solve_increasing

__all__ = [
    "CylinderProblem",
    "cylinder_normalization_value",
    "solve_cylinder",
    "constant_density_upper_bound",
    "extremality_gap",
]


@dataclass(frozen=True)
class CylinderProblem:
    """Cylinder D x (0, L) with cross-section measure ``area`` and axial p(t)."""

    area: float
    length: float
    p: ExponentFunction

    def __post_init__(self) -> None:
        if not (self.area > 0 and math.isfinite(self.area)):
            raise ValueError(f"area must be positive and finite, got {self.area}")
        if not (self.length > 0 and math.isfinite(self.length)):
            # An infinite strip has zero modulus and no extremal density.
            raise ValueError(f"length must be positive and finite, got {self.length}")
        lo, hi = self.p.interval
        if lo > 1e-12 or hi < self.length - 1e-12:
            raise ValueError(
                f"exponent is defined on [{lo}, {hi}], which does not cover [0, {self.length}]"
            )


def _extremal_density(prob: CylinderProblem, lam: float) -> Callable:
    peval = prob.p.eval

    def phi(t):
        tt = np.asarray(t, dtype=float)
        pt = np.asarray(peval(tt), dtype=float)
        out = (lam / pt) ** (1.0 / (pt - 1.0))
        return float(out) if tt.ndim == 0 else out

    return phi


def cylinder_normalization_value(
    prob: CylinderProblem, lam: float, quad: QuadratureConfig | None = None
) -> float:
    """Integral over [0, L] of the candidate density (lam / p(t))^(1/(p(t)-1))."""
    if lam <= 0:
        raise ValueError(f"lam must be positive, got {lam}")
    return integrate(_extremal_density(prob, lam), 0.0, prob.length, quad)


def solve_cylinder(
    prob: CylinderProblem,
    quad: QuadratureConfig | None = None,
    bis: BisectionConfig | None = None,
) -> ExtremalSolution:
    """Extremal density and modulus for curves joining the two ends."""
    root, residual, iters = solve_increasing(
        lambda lam: cylinder_normalization_value(prob, lam, quad), 1.0, bis
    )
    phi = _extremal_density(prob, root)
    modulus = prob.area * integrate(
        lambda t: phi(t) ** prob.p.eval(t), 0.0, prob.length, quad
    )
    return ExtremalSolution(root, modulus, phi, residual, iters)


def constant_density_upper_bound(
    prob: CylinderProblem, quad: QuadratureConfig | None = None
) -> float:
    """Energy of the constant density 1/L, admissible for end-to-end curves."""
    L = prob.length
    return prob.area * integrate(lambda t: L ** (-prob.p.eval(t)), 0.0, L, quad)


def extremality_gap(
    prob: CylinderProblem,
    quad: QuadratureConfig | None = None,
    bis: BisectionConfig | None = None,
) -> float:
    """Constant-density bound minus the modulus.

    Zero exactly when p is constant, since only then is the constant density
    extremal; strictly positive otherwise, up to solver tolerances.
    """
    return constant_density_upper_bound(prob, quad) - solve_cylinder(prob, quad, bis).modulus
