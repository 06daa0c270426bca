"""Moduli of the curve family joining the boundary spheres of an annulus.

For a radial exponent p(|x|) the extremal density is an explicit radial
formula with one free scalar, the Lagrange multiplier of the unit-integral
normalization.  Everything here reduces to one-dimensional integrals: solving
the multiplier by bisection, evaluating the modulus, the closed constant
exponent form, the logarithmic test-density upper bound, and a capacity
certificate built from the radial potential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .exponent import ExponentFunction
from .quadrature import QuadratureConfig, integrate
from .rootfind import BisectionConfig, solve_increasing

__all__ = [
    "AnnulusProblem",
    "ExtremalSolution",
    "SweepRow",
    "unit_sphere_area",
    "normalization_value",
    "solve_annulus",
    "constant_exponent_modulus",
    "log_density_upper_bound",
    "modulus_sweep",
    "radial_potential",
    "capacity_upper_via_potential",
]


def unit_sphere_area(n: int) -> float:
    """Surface area of the unit sphere in R^n: 2 pi^(n/2) / Gamma(n/2)."""
    if n < 1 or int(n) != n:
        raise ValueError(f"dimension must be an integer >= 1, got {n}")
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


@dataclass(frozen=True)
class AnnulusProblem:
    """Spherical ring r1 < |x| < r2 in R^n with a radial exponent p(|x|)."""

    n: int
    r1: float
    r2: float
    p: ExponentFunction

    def __post_init__(self) -> None:
        if self.n < 2 or int(self.n) != self.n:
            raise ValueError(f"dimension n must be an integer >= 2, got {self.n}")
        if not (0 < self.r1 < self.r2 and math.isfinite(self.r2)):
            raise ValueError(
                f"radii must satisfy 0 < r1 < r2 < inf, got r1={self.r1}, r2={self.r2}"
            )
        lo, hi = self.p.interval
        if lo > self.r1 + 1e-12 or hi < self.r2 - 1e-12:
            raise ValueError(
                f"exponent is defined on [{lo}, {hi}], which does not cover "
                f"the radial interval [{self.r1}, {self.r2}]"
            )


@dataclass(frozen=True)
class ExtremalSolution:
    """Solved variational problem.

    lam is the Lagrange multiplier of the unit-integral constraint, density
    the pointwise minimizer (accepts scalars or arrays), residual the
    normalization defect at the accepted multiplier.
    """

    lam: float
    modulus: float
    density: Callable
    residual: float
    solver_iters: int


def _extremal_density(prob: AnnulusProblem, lam: float) -> Callable:
    omega = unit_sphere_area(prob.n)
    k = prob.n - 1
    peval = prob.p.eval

    def rho(r):
        rr = np.asarray(r, dtype=float)
        pr = np.asarray(peval(rr), dtype=float)
        out = (lam / (pr * omega * rr**k)) ** (1.0 / (pr - 1.0))
        return float(out) if rr.ndim == 0 else out

    return rho


def normalization_value(
    prob: AnnulusProblem, lam: float, quad: QuadratureConfig | None = None
) -> float:
    """Integral of the candidate extremal density over [r1, r2].

    Strictly increasing in lam, from 0 to infinity; the multiplier is its
    unique preimage of 1.
    """
    if lam <= 0:
        raise ValueError(f"lam must be positive, got {lam}")
    return integrate(_extremal_density(prob, lam), prob.r1, prob.r2, quad)


def solve_annulus(
    prob: AnnulusProblem,
    quad: QuadratureConfig | None = None,
    bis: BisectionConfig | None = None,
) -> ExtremalSolution:
    """Extremal density and modulus for the spherical-ring curve family."""
    root, residual, iters = solve_increasing(
        lambda lam: normalization_value(prob, lam, quad), 1.0, bis
    )
    rho = _extremal_density(prob, root)
    modulus = unit_sphere_area(prob.n) * integrate(
        lambda r: rho(r) ** prob.p.eval(r) * r ** (prob.n - 1), prob.r1, prob.r2, quad
    )
    return ExtremalSolution(root, modulus, rho, residual, iters)


def constant_exponent_modulus(n: int, p: float, r1: float, r2: float) -> float:
    """Closed-form ring modulus for a constant exponent p > 1."""
    if not (0 < r1 < r2):
        raise ValueError(f"radii must satisfy 0 < r1 < r2, got ({r1}, {r2})")
    if p <= 1:
        raise ValueError(f"exponent must exceed 1, got {p}")
    k = (n - 1) / (p - 1.0)
    if abs(k - 1.0) < 1e-12:
        inner = math.log(r2 / r1)
    else:
        inner = (r2 ** (1.0 - k) - r1 ** (1.0 - k)) / (1.0 - k)
    return unit_sphere_area(n) * inner ** (1.0 - p)


def log_density_upper_bound(
    prob: AnnulusProblem, quad: QuadratureConfig | None = None
) -> float:
    """Energy of the admissible density 1/(r log(r2/r1)).

    An upper bound for the modulus; it is attained exactly when p(r) is
    identically the dimension n.
    """
    logratio = math.log(prob.r2 / prob.r1)

    def integrand(r: float) -> float:
        pr = prob.p.eval(r)
        return r ** (prob.n - 1 - pr) / logratio**pr

    return unit_sphere_area(prob.n) * integrate(integrand, prob.r1, prob.r2, quad)


@dataclass(frozen=True)
class SweepRow:
    r2: float
    lam: float | None
    modulus: float | None
    residual: float | None = None
    error: str | None = None


def modulus_sweep(
    prob: AnnulusProblem,
    r2_values: Sequence[float],
    quad: QuadratureConfig | None = None,
    bis: BisectionConfig | None = None,
) -> list[SweepRow]:
    """Re-solve for each outer radius, keeping n, r1, and the exponent map.

    The template exponent must be evaluable up to the largest requested
    radius.  Each radius is solved from scratch, and a failure on one row is
    reported on that row without stopping the sweep.
    """
    rows: list[SweepRow] = []
    for r2 in r2_values:
        try:
            sub = AnnulusProblem(prob.n, prob.r1, float(r2), prob.p.restricted(prob.r1, float(r2)))
            sol = solve_annulus(sub, quad, bis)
            rows.append(SweepRow(float(r2), sol.lam, sol.modulus, sol.residual))
        except Exception as exc:  # per-row report, the sweep keeps going
            rows.append(SweepRow(float(r2), None, None, None, f"{type(exc).__name__}: {exc}"))
    return rows


def radial_potential(
    sol: ExtremalSolution, prob: AnnulusProblem, quad: QuadratureConfig | None = None
) -> Callable[[float], float]:
    """Potential u(r) with u = 1 on the inner sphere, 0 on the outer.

    u(r) integrates the extremal density from r to r2, so |u'| is the
    density itself and the potential inherits its energy.
    """

    def u(r: float) -> float:
        rr = float(r)
        if rr < prob.r1 - 1e-12 or rr > prob.r2 + 1e-12:
            raise ValueError(f"r={rr} lies outside [{prob.r1}, {prob.r2}]")
        rr = min(max(rr, prob.r1), prob.r2)
        return integrate(sol.density, rr, prob.r2, quad)

    return u


def capacity_upper_via_potential(
    sol: ExtremalSolution, prob: AnnulusProblem, quad: QuadratureConfig | None = None
) -> float:
    """Gradient energy of the radial potential built from the density.

    The potential separates the boundary spheres and its gradient magnitude
    is the extremal density, so this energy equals the modulus and certifies
    numerically that the condenser capacity cannot exceed it.
    """
    rho = sol.density
    return unit_sphere_area(prob.n) * integrate(
        lambda r: rho(r) ** prob.p.eval(r) * r ** (prob.n - 1), prob.r1, prob.r2, quad
    )
