"""Finite-difference eigensolvers for the radial and polar equations.

Both problems are discretized as the Sturm-Liouville form
``-(p u')' + q u = lambda w u`` on a cell-centred grid with a three-point
flux stencil. Dirichlet walls use an odd ghost cell, Neumann walls an even
one. The weight is removed by a diagonal similarity, so the matrix handed to
the kernel is symmetric tridiagonal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy.optimize import brentq

from ..units import hbar2_over_2mu
from . import kernels

BOUNDARIES = ("dirichlet_both", "dirichlet_lower_neumann_upper")
MIN_POINTS = 64
ANGULAR_EPS = 1e-4
NOMINAL_ORDER = 2.0


class GridError(ValueError):
    pass


class _Mesh(NamedTuple):
    """Unvalidated grid geometry; coarse Richardson levels may fall below MIN_POINTS."""

    lower: float
    upper: float
    points: int
    boundary: str

    @property
    def step(self) -> float:
        return (self.upper - self.lower) / self.points

    def nodes(self) -> np.ndarray:
        return self.lower + (np.arange(self.points) + 0.5) * self.step

    def faces(self) -> np.ndarray:
        return self.lower + np.arange(self.points + 1) * self.step


@dataclass(frozen=True)
class GridSpec:
    lower: float
    upper: float
    points: int
    boundary: str = "dirichlet_both"

    def __post_init__(self):
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)) or self.upper <= self.lower:
            raise GridError(f"need finite upper > lower, got [{self.lower}, {self.upper}]")
        if int(self.points) != self.points or self.points < MIN_POINTS:
            raise GridError(f"points must be an integer >= {MIN_POINTS}, got {self.points!r}")
        if self.boundary not in BOUNDARIES:
            raise GridError(f"boundary must be one of {BOUNDARIES}, got {self.boundary!r}")

    def mesh(self, points: int | None = None) -> _Mesh:
        return _Mesh(self.lower, self.upper, self.points if points is None else points, self.boundary)

    @property
    def step(self) -> float:
        return self.mesh().step

    def nodes(self) -> np.ndarray:
        return self.mesh().nodes()

    def with_points(self, points: int) -> "GridSpec":
        return GridSpec(self.lower, self.upper, points, self.boundary)


@dataclass
class OracleResult:
    eigenvalues: np.ndarray
    grid: GridSpec
    richardson_estimate: np.ndarray | None = None
    convergence_order: float = float("nan")
    orders: np.ndarray | None = None
    coarse_eigenvalues: list = field(default_factory=list, repr=False)

    @property
    def best(self) -> np.ndarray:
        """Extrapolated values when available, otherwise the raw eigenvalues."""
        return self.eigenvalues if self.richardson_estimate is None else self.richardson_estimate


def _stencil(grid: _Mesh, p_faces, q_nodes, w_nodes=None):
    h = grid.step
    inv_h2 = 1.0 / (h * h)
    p = np.asarray(p_faces, dtype=np.float64)
    q = np.asarray(q_nodes, dtype=np.float64)
    diag = (p[:-1] + p[1:]) * inv_h2 + q
    # ghost cells: odd reflection doubles the wall flux, even reflection cancels it
    diag[0] += p[0] * inv_h2
    if grid.boundary == "dirichlet_both":
        diag[-1] += p[-1] * inv_h2
    else:
        diag[-1] -= p[-1] * inv_h2
    off = -p[1:-1] * inv_h2
    if w_nodes is not None:
        s = 1.0 / np.sqrt(np.asarray(w_nodes, dtype=np.float64))
        diag = diag * s * s
        off = off * s[:-1] * s[1:]
    return diag, off


def _check_k(k: int, grid: GridSpec):
    if int(k) != k or k < 1:
        raise GridError(f"k must be a positive integer, got {k!r}")
    if k > grid.points // 4:
        raise GridError(f"k={k} too large for {grid.points} points (limit {grid.points // 4})")


def observed_order(values, steps) -> float:
    """Order p from three solutions on steps h1 > h2 > h3, assuming e ~ C h^p."""
    v1, v2, v3 = values
    h1, h2, h3 = steps
    d12, d23 = v1 - v2, v2 - v3
    if d23 == 0 or d12 == 0 or (d12 > 0) != (d23 > 0):
        return float("nan")
    ratio = d12 / d23
    r12, r23 = h1 / h2, h2 / h3
    if abs(r12 - r23) < 1e-12:
        return math.log(ratio) / math.log(r12)

    def f(p):
        return (h1**p - h2**p) / (h2**p - h3**p) - ratio

    try:
        return brentq(f, 0.05, 12.0)
    except ValueError:
        return float("nan")


def richardson(coarse, fine, ratio: float, order: float = NOMINAL_ORDER):
    coarse = np.asarray(coarse)
    fine = np.asarray(fine)
    return fine + (fine - coarse) / (ratio**order - 1.0)


def _refined_solve(build: Callable[[_Mesh], tuple], grid: GridSpec, k: int, refine: bool) -> OracleResult:
    _check_k(k, grid)
    fine = grid.mesh()
    vals = kernels.tridiag_lowest(*build(fine), k)
    if not refine:
        return OracleResult(eigenvalues=vals, grid=grid)
    half = grid.mesh(grid.points // 2)
    quarter = grid.mesh(grid.points // 4)
    v_half = kernels.tridiag_lowest(*build(half), k)
    v_quarter = kernels.tridiag_lowest(*build(quarter), k)
    steps = (quarter.step, half.step, fine.step)
    orders = np.array([observed_order((v_quarter[i], v_half[i], vals[i]), steps) for i in range(k)])
    return OracleResult(
        eigenvalues=vals,
        grid=grid,
        richardson_estimate=richardson(v_half, vals, half.step / fine.step),
        convergence_order=float(orders[0]),
        orders=orders,
        coarse_eigenvalues=[v_quarter, v_half],
    )


def _sample(potential, r) -> np.ndarray:
    v = np.asarray(potential(r), dtype=np.float64)
    if v.shape != r.shape:
        v = np.broadcast_to(v, r.shape).astype(np.float64)
    if not np.all(np.isfinite(v)):
        bad = r[~np.isfinite(v)][0]
        raise ValueError(f"potential is not finite at r={bad!r}")
    return v


def solve_radial_fd(potential: Callable, mu: float, grid: GridSpec, k: int, refine: bool = True) -> OracleResult:
    """Lowest ``k`` eigenvalues (eV) of -hbar^2/(2 mu) d^2/dr^2 + V(r).

    ``potential`` maps an array of r (angstrom) to V in eV. With ``refine``
    the problem is also solved on the 1/2 and 1/4 resolution grids to get
    a Richardson estimate and the observed order.
    """
    c = hbar2_over_2mu(mu)

    def build(mesh):
        r = mesh.nodes()
        return _stencil(mesh, np.full(mesh.points + 1, c), _sample(potential, r))

    return _refined_solve(build, grid, k, refine)


def solve_angular_fd(A: float, B: float, m: int, grid: GridSpec, k: int, refine: bool = True) -> OracleResult:
    """Lowest ``k`` separation constants E_theta of the polar equation.

    Solves -(sin t u')' + [(m^2 + A)/sin t + B sin t / cos^2 t] u = E sin t u
    on the grid's theta interval.
    """
    if A < 0 or B < 0:
        raise ValueError("A and B must be non-negative")
    a_tilde = m * m + A

    def build(mesh):
        t = mesh.nodes()
        s = np.sin(t)
        q = a_tilde / s + B * s / np.cos(t) ** 2
        return _stencil(mesh, np.sin(mesh.faces()), q, w_nodes=s)

    return _refined_solve(build, grid, k, refine)


def angular_grid(A: float, B: float, m: int, points: int = 4096, parity: str | None = None,
                 eps: float = ANGULAR_EPS) -> GridSpec:
    """Default polar grid over half the range of theta.

    B > 0 clips both singular ends by ``eps``. For B = 0 the upper end sits
    at pi/2 with a Neumann (even) or Dirichlet (odd) wall. When m^2 + A = 0
    the lower end is placed at 0 itself, where the sin(theta) flux vanishes
    and the regular solution is selected automatically.
    """
    lower = 0.0 if m * m + A == 0 else eps
    if B > 0:
        return GridSpec(lower, 0.5 * math.pi - eps, points, "dirichlet_both")
    boundary = "dirichlet_both" if parity == "odd" else "dirichlet_lower_neumann_upper"
    return GridSpec(lower, 0.5 * math.pi, points, boundary)


def morse_grid(re: float, a: float, points: int = 4096) -> GridSpec:
    return GridSpec(max(1e-3, re - 10.0 / a), re + 25.0 / a, points)


def kratzer_grid(re: float, points: int = 4096) -> GridSpec:
    return GridSpec(1e-3, 40.0 * re, points)


@dataclass(frozen=True)
class RadialProblem:
    potential: Callable
    mu: float
    k: int = 1

    def eigenvalues(self, grid: GridSpec) -> np.ndarray:
        return solve_radial_fd(self.potential, self.mu, grid, self.k, refine=False).eigenvalues


@dataclass(frozen=True)
class AngularProblem:
    A: float
    B: float
    m: int
    k: int = 1

    def eigenvalues(self, grid: GridSpec) -> np.ndarray:
        return solve_angular_fd(self.A, self.B, self.m, grid, self.k, refine=False).eigenvalues


@dataclass
class ConvergenceRow:
    grid: GridSpec
    eigenvalues: np.ndarray
    orders: np.ndarray  # nan until three grids are available


@dataclass
class ConvergenceTable:
    rows: list
    extrapolated: np.ndarray
    change: np.ndarray  # |extrapolated - finest|
    flagged: list  # eigenvalue indices whose change exceeds tol

    @property
    def final_orders(self) -> np.ndarray:
        return self.rows[-1].orders


def convergence_study(problem, grids, tol: float | None = None) -> ConvergenceTable:
    """Solve ``problem`` on each grid, report observed orders and Richardson limits."""
    grids = list(grids)
    if len(grids) < 3:
        raise GridError("convergence_study needs at least three grids")
    counts = [g.points for g in grids]
    if any(b <= a for a, b in zip(counts, counts[1:])):
        raise GridError(f"grid point counts must be strictly increasing, got {counts}")
    values = [np.asarray(problem.eigenvalues(g)) for g in grids]
    steps = [g.step for g in grids]
    rows = []
    for i, (g, v) in enumerate(zip(grids, values)):
        if i < 2:
            orders = np.full(v.shape, np.nan)
        else:
            orders = np.array([
                observed_order((values[i - 2][j], values[i - 1][j], v[j]), steps[i - 2:i + 1])
                for j in range(v.size)
            ])
        rows.append(ConvergenceRow(g, v, orders))
    extrapolated = richardson(values[-2], values[-1], steps[-2] / steps[-1])
    change = np.abs(extrapolated - values[-1])
    flagged = [] if tol is None else [int(j) for j in np.nonzero(change > tol)[0]]
    return ConvergenceTable(rows, extrapolated, change, flagged)
