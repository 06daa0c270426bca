"""Brute-force verification paths that bypass the closed-form solutions.

Two independent checks: direct finite-dimensional minimization over grid
densities (stationarity solved for the scalar multiplier, plus a projected
gradient descent as a second opinion), and discrete averaging experiments
showing that spherical or fibre averaging never increases energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .annulus import AnnulusProblem, unit_sphere_area
from .cylinder import CylinderProblem
from .rootfind import BisectionConfig, BracketFailure, solve_increasing

__all__ = [
    "BracketFailure",
    "NonConvergence",
    "NotAdmissible",
    "GridDensity",
    "GridDensity2D",
    "AveragingReport",
    "discrete_energy",
    "discrete_minimize",
    "projected_gradient_minimize",
    "annulus_grid",
    "cylinder_grid",
    "spherical_average_check",
    "fibre_average_check",
    "random_admissible_2d",
]

_ADMISSIBILITY_SLACK = 1e-12
_MIN_EXPONENT = 1.0 + 1e-6


class NonConvergence(RuntimeError):
    """Projected gradient descent stalled away from the reference minimum."""


class NotAdmissible(ValueError):
    """A test density misses the unit line-integral requirement on some ray."""


@dataclass(frozen=True)
class GridDensity:
    """Piecewise-constant density on a uniform 1-D grid with unit integral."""

    values: np.ndarray
    cell_width: float

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if v.ndim != 1 or v.size < 1:
            raise ValueError(f"values must be a nonempty 1-D vector, got shape {v.shape}")
        if not (self.cell_width > 0 and math.isfinite(self.cell_width)):
            raise ValueError(f"cell_width must be positive and finite, got {self.cell_width}")
        if not np.isfinite(v).all() or v.min() < 0:
            raise ValueError("density values must be finite and nonnegative")
        total = float(v.sum() * self.cell_width)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"grid density must integrate to 1, got {total}")

    @property
    def n_cells(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class GridDensity2D:
    """Nonnegative density on a product grid.

    Rows follow the direction the problems solve in (radius or axis), columns
    the transverse one (angle or cross-section position); ``cell_width`` is
    the row-direction cell size.
    """

    values: np.ndarray
    axial_centers: np.ndarray
    cell_width: float
    transverse_width: float

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        c = np.asarray(self.axial_centers, dtype=float)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "axial_centers", c)
        if v.ndim != 2:
            raise ValueError(f"values must be 2-D, got shape {v.shape}")
        if c.shape != (v.shape[0],):
            raise ValueError(f"axial_centers shape {c.shape} does not match {v.shape[0]} rows")
        if not np.isfinite(v).all() or v.min() < 0:
            raise ValueError("density values must be finite and nonnegative")
        if self.cell_width <= 0 or self.transverse_width <= 0:
            raise ValueError("cell widths must be positive")


class AveragingReport(NamedTuple):
    energy_before: float
    energy_after: float
    admissible_after: bool


def discrete_energy(density: GridDensity, weights, exponents) -> float:
    """Energy sum w_i v_i^{p_i} * cell_width of a grid density."""
    w = np.asarray(weights, dtype=float)
    p = np.asarray(exponents, dtype=float)
    return float((w * density.values**p).sum() * density.cell_width)


def _validated_problem(weights, exponents, cell_width):
    w = np.asarray(weights, dtype=float)
    p = np.asarray(exponents, dtype=float)
    if w.ndim != 1 or w.size < 1 or p.shape != w.shape:
        raise ValueError(f"weights and exponents must be matching 1-D vectors, got {w.shape} and {p.shape}")
    if not (np.isfinite(w).all() and w.min() > 0):
        raise ValueError("weights must be finite and positive")
    if not (np.isfinite(p).all() and p.min() >= _MIN_EXPONENT):
        raise ValueError(f"exponents must be finite and at least {_MIN_EXPONENT}")
    if not (cell_width > 0 and math.isfinite(cell_width)):
        raise ValueError(f"cell_width must be positive and finite, got {cell_width}")
    return w, p


def discrete_minimize(
    weights, exponents, cell_width: float, bis: BisectionConfig | None = None
) -> GridDensity:
    """Minimize sum(w_i v_i^{p_i}) * d over v >= 0 with sum(v_i) * d = 1.

    Works directly on the stationarity condition w_i p_i v_i^{p_i - 1} = mu:
    the constraint is strictly increasing in mu, so the same bisection kernel
    used by the continuous solvers pins mu down.  Never touches the
    closed-form density formulas, which is what makes it an oracle.
    """
    w, p = _validated_problem(weights, exponents, cell_width)
    if bis is None:
        bis = BisectionConfig(residual_tol=1e-10, lambda_tol=1e-13)

    def constraint(mu: float) -> float:
        return float(((mu / (w * p)) ** (1.0 / (p - 1.0))).sum() * cell_width)

    mu, _, _ = solve_increasing(constraint, 1.0, bis)
    v = (mu / (w * p)) ** (1.0 / (p - 1.0))
    v = v / (v.sum() * cell_width)  # absorb the leftover bisection residual
    return GridDensity(v, cell_width)


def _project_unit_simplex(y: np.ndarray) -> np.ndarray:
    """Euclidean projection onto {u : u >= 0, sum(u) = 1}."""
    n = y.size
    s = np.sort(y)[::-1]
    css = np.cumsum(s)
    idx = np.nonzero(s * np.arange(1, n + 1) > (css - 1.0))[0][-1]
    theta = (css[idx] - 1.0) / (idx + 1.0)
    u = np.maximum(y - theta, 0.0)
    return u / u.sum()


def projected_gradient_minimize(
    weights,
    exponents,
    cell_width: float,
    iters: int = 10_000,
    step: float | None = None,
) -> GridDensity:
    """Second, formula-free minimization path: gradient steps plus projection.

    Descends on u = v * cell_width inside the unit simplex from the uniform
    start.  The default step comes from a curvature envelope around the
    reference minimizer, and the run is compared against the stationarity
    solution: stalling more than 0.1% above it raises NonConvergence.
    """
    w, p = _validated_problem(weights, exponents, cell_width)
    if iters < 1:
        raise ValueError(f"iters must be at least 1, got {iters}")
    if step is not None and step <= 0:
        raise ValueError(f"step must be positive, got {step}")

    reference = discrete_minimize(w, p, cell_width)
    e_ref = discrete_energy(reference, w, p)

    n = w.size
    u = np.full(n, 1.0 / n)
    if step is None:
        v_env = 2.0 * max(float(reference.values.max()), 1.0 / (n * cell_width))
        curvature = w * p * (p - 1.0) * v_env ** (p - 2.0) / cell_width
        step = 0.1 / float(curvature.max())

    def energy(u_vec: np.ndarray) -> float:
        return float((w * (u_vec / cell_width) ** p).sum() * cell_width)

    e_prev = energy(u)
    e = e_prev
    stall = 0
    for _ in range(iters):
        grad = w * p * (u / cell_width) ** (p - 1.0)
        u = _project_unit_simplex(u - step * grad)
        e = energy(u)
        if e_prev - e < 1e-15 * max(1.0, abs(e)):
            stall += 1
            if stall >= 100:
                break
        else:
            stall = 0
        e_prev = e
    if e - e_ref > 1e-3 * max(abs(e_ref), 1e-12):
        raise NonConvergence(
            f"projected gradient reached energy {e}, reference minimum is {e_ref}"
        )
    return GridDensity(u / cell_width, cell_width)


def annulus_grid(prob: AnnulusProblem, n_cells: int):
    """Midpoint weights and exponents discretizing the radial ring energy.

    Returns (weights, exponents, cell_width) with w_i the sphere area at the
    cell-center radius.
    """
    if n_cells < 1:
        raise ValueError(f"n_cells must be at least 1, got {n_cells}")
    delta = (prob.r2 - prob.r1) / n_cells
    r = prob.r1 + (np.arange(n_cells) + 0.5) * delta
    w = unit_sphere_area(prob.n) * r ** (prob.n - 1)
    return w, np.asarray(prob.p.eval(r), dtype=float), delta


def cylinder_grid(prob: CylinderProblem, n_cells: int):
    """Midpoint weights and exponents discretizing the axial energy."""
    if n_cells < 1:
        raise ValueError(f"n_cells must be at least 1, got {n_cells}")
    delta = prob.length / n_cells
    t = (np.arange(n_cells) + 0.5) * delta
    w = np.full(n_cells, float(prob.area))
    return w, np.asarray(prob.p.eval(t), dtype=float), delta


def _check_column_admissibility(rho2d: GridDensity2D, label: str) -> None:
    integrals = rho2d.values.sum(axis=0) * rho2d.cell_width
    worst = float(integrals.min())
    if worst < 1.0 - _ADMISSIBILITY_SLACK:
        raise NotAdmissible(f"a {label} integral is {worst}, below the required 1")


def spherical_average_check(rho2d: GridDensity2D, prob: AnnulusProblem) -> AveragingReport:
    """Replace a polar-grid density by its angular mean and compare energies.

    Restricted to the plane ring, where the row mean over the angle is the
    exact spherical average.  Every grid ray must carry line integral >= 1 on
    entry; the report shows the discrete energies before and after and
    whether the averaged density is still admissible.
    """
    if prob.n != 2:
        raise ValueError(f"the polar-grid check needs n=2, got n={prob.n}")
    r = rho2d.axial_centers
    if r.min() < prob.r1 - 1e-9 or r.max() > prob.r2 + 1e-9:
        raise ValueError("grid radii fall outside the ring")
    m = rho2d.values.shape[1]
    if abs(m * rho2d.transverse_width - 2.0 * math.pi) > 1e-9:
        raise ValueError("angular cells must tile the full circle")
    _check_column_admissibility(rho2d, "ray")

    dr, dth = rho2d.cell_width, rho2d.transverse_width
    p = np.asarray(prob.p.eval(r), dtype=float)
    energy_before = float((rho2d.values ** p[:, None] * r[:, None]).sum() * dr * dth)
    avg = rho2d.values.mean(axis=1)
    energy_after = float((avg**p * r).sum() * dr * (m * dth))
    admissible_after = bool(avg.sum() * dr >= 1.0 - _ADMISSIBILITY_SLACK)
    # Mean commutes with neither power nor sum in the wrong direction only.
    assert energy_after <= energy_before + 1e-12 * max(1.0, energy_before)
    return AveragingReport(energy_before, energy_after, admissible_after)


def fibre_average_check(rho2d: GridDensity2D, prob: CylinderProblem) -> AveragingReport:
    """Column-mean counterpart on a rectangle grid covering D x (0, L)."""
    t = rho2d.axial_centers
    if t.min() < -1e-9 or t.max() > prob.length + 1e-9:
        raise ValueError("grid heights fall outside the cylinder")
    m = rho2d.values.shape[1]
    if abs(m * rho2d.transverse_width - prob.area) > 1e-9 * max(1.0, prob.area):
        raise ValueError("transverse cells must tile the cross-section measure")
    _check_column_admissibility(rho2d, "column")

    dt, dx = rho2d.cell_width, rho2d.transverse_width
    p = np.asarray(prob.p.eval(t), dtype=float)
    energy_before = float((rho2d.values ** p[:, None]).sum() * dt * dx)
    avg = rho2d.values.mean(axis=1)
    energy_after = float((avg**p).sum() * dt * (m * dx))
    admissible_after = bool(avg.sum() * dt >= 1.0 - _ADMISSIBILITY_SLACK)
    assert energy_after <= energy_before + 1e-12 * max(1.0, energy_before)
    return AveragingReport(energy_before, energy_after, admissible_after)


def random_admissible_2d(
    axial_centers,
    cell_width: float,
    n_transverse: int,
    transverse_width: float,
    rng: np.random.Generator,
) -> GridDensity2D:
    """Lognormal noise scaled so every column carries line integral exactly 1."""
    centers = np.asarray(axial_centers, dtype=float)
    raw = np.exp(rng.standard_normal((centers.size, n_transverse)))
    raw = raw / (raw.sum(axis=0) * cell_width)
    return GridDensity2D(raw, centers, cell_width, transverse_width)
