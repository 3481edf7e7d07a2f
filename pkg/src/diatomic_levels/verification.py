"""Closed-form vs finite-difference cross-checks used by ``verify``."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .angular import AngularChannel, angular_eigenvalue
from .catalog import MoleculeParams
from .oracle.fd import (
    OracleResult,
    angular_grid,
    kratzer_grid,
    morse_grid,
    solve_angular_fd,
    solve_radial_fd,
)
from .radial import (
    kratzer_energy,
    kratzer_potential,
    morse_energy,
    morse_nmax,
    morse_potential,
    pekeris_centrifugal,
)
from .units import hbar2_over_2mu

ORDER_RANGE = (1.5, 2.5)
ENERGY_TOL = 1e-3  # eV
RELATIVE_TOL = 1e-3
SUITES = ("angular", "kratzer", "morse-pekeris")

# (ñ, m) of the table rows with n <= 3, crossed with the three (A, B) columns
TABLE_CHANNELS = [
    AngularChannel(nt, m, A, B)
    for nt, m in ((0, 0), (1, 0), (2, 1), (3, 2))
    for A, B in ((1.0, 9.0), (1.0, 1.0), (9.0, 1.0))
]


@dataclass
class Comparison:
    suite: str
    label: str
    index: int
    expected: float
    oracle: float
    delta: float
    tol: float
    relative: bool
    passed: bool


@dataclass
class ConvergenceIssue:
    suite: str
    label: str
    points: int
    orders: list
    eigenvalues: list


@dataclass
class VerificationReport:
    comparisons: list = field(default_factory=list)
    convergence_issues: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.comparisons)

    @property
    def converged(self) -> bool:
        return not self.convergence_issues

    def max_delta(self, suite: str | None = None) -> float:
        vals = [abs(c.delta) for c in self.comparisons if suite is None or c.suite == suite]
        return max(vals, default=0.0)

    def extend(self, other: "VerificationReport"):
        self.comparisons.extend(other.comparisons)
        self.convergence_issues.extend(other.convergence_issues)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "converged": self.converged,
            "comparisons": [asdict(c) for c in self.comparisons],
            "convergence_issues": [asdict(c) for c in self.convergence_issues],
        }


def order_is_acceptable(result: OracleResult, indices=None) -> bool:
    """True unless a measurable eigenvalue change has an order outside ORDER_RANGE."""
    if result.orders is None:
        return True
    coarse4, coarse2 = result.coarse_eigenvalues
    lo, hi = ORDER_RANGE
    for i in range(len(result.eigenvalues)) if indices is None else indices:
        v = result.eigenvalues[i]
        noise = 1e-8 * max(1.0, abs(v))
        if abs(coarse4[i] - coarse2[i]) <= noise and abs(coarse2[i] - v) <= noise:
            continue  # converged to roundoff, no order to measure
        p = result.orders[i]
        if not (math.isfinite(p) and lo <= p <= hi):
            return False
    return True


def _record(report, suite, label, result, expected, tol, relative):
    oracle = result.best
    for i, exp in enumerate(expected):
        delta = float(oracle[i] - exp)
        scale = abs(exp) if relative and exp != 0 else 1.0
        report.comparisons.append(Comparison(
            suite, label, i, float(exp), float(oracle[i]), delta, tol, relative,
            abs(delta) <= tol * scale,
        ))
    if not order_is_acceptable(result, range(len(expected))):
        report.convergence_issues.append(ConvergenceIssue(
            suite, label, result.grid.points,
            [float(x) for x in result.orders],
            [float(x) for x in result.eigenvalues],
        ))


def angular_suite(points: int = 4096, n_tildes: int = 4, tol: float = RELATIVE_TOL) -> VerificationReport:
    report = VerificationReport()
    for A in (1.0, 9.0):
        for B in (1.0, 9.0):
            for m in range(3):
                res = solve_angular_fd(A, B, m, angular_grid(A, B, m, points), n_tildes)
                expected = [angular_eigenvalue(AngularChannel(nt, m, A, B)).e_theta for nt in range(n_tildes)]
                _record(report, "angular", f"A={A:g} B={B:g} m={m}", res, expected, tol, True)
    for parity in ("even", "odd"):
        res = solve_angular_fd(0.0, 0.0, 0, angular_grid(0.0, 0.0, 0, points, parity), 3)
        expected = [angular_eigenvalue(AngularChannel(nt, 0, 0.0, 0.0, parity)).e_theta for nt in range(3)]
        _record(report, "angular", f"A=0 B=0 m=0 {parity}", res, expected, tol, True)
    return report


def kratzer_oracle(p: MoleculeParams, ch: AngularChannel, levels: int, points: int = 4096) -> OracleResult:
    e_theta = angular_eigenvalue(ch).e_theta
    c = hbar2_over_2mu(p.mu)

    def potential(r):
        return kratzer_potential(p, r) + c * e_theta / r**2

    return solve_radial_fd(potential, p.mu, kratzer_grid(p.re, points), levels)


def morse_pekeris_oracle(p: MoleculeParams, ch: AngularChannel, levels: int, points: int = 4096) -> OracleResult:
    e_theta = angular_eigenvalue(ch).e_theta

    def potential(r):
        return morse_potential(p, r) + pekeris_centrifugal(p, e_theta, r)

    return solve_radial_fd(potential, p.mu, morse_grid(p.re, p.a, points), levels)


def morse_true_centrifugal_oracle(p: MoleculeParams, ch: AngularChannel, levels: int,
                                  points: int = 4096) -> OracleResult:
    """Morse plus the exact hbar^2 E_theta / 2 mu r^2 term (no Pekeris step).

    The gap to :func:`morse_energy` measures the Pekeris approximation itself;
    it is informational only.
    """
    e_theta = angular_eigenvalue(ch).e_theta
    c = hbar2_over_2mu(p.mu)

    def potential(r):
        return morse_potential(p, r) + c * e_theta / r**2

    return solve_radial_fd(potential, p.mu, morse_grid(p.re, p.a, points), levels)


def _label(p, ch):
    return f"{p.name} ñ={ch.n_tilde} m={ch.m} A={ch.A:g} B={ch.B:g}"


def kratzer_suite(molecules, channels=None, levels: int = 5, points: int = 4096,
                  tol: float = ENERGY_TOL) -> VerificationReport:
    report = VerificationReport()
    for p in molecules:
        for ch in channels or TABLE_CHANNELS:
            res = kratzer_oracle(p, ch, levels, points)
            expected = [kratzer_energy(p, n, ch).energy for n in range(levels)]
            _record(report, "kratzer", _label(p, ch), res, expected, tol, False)
    return report


def morse_suite(molecules, channels=None, levels: int = 4, points: int = 4096,
                tol: float = ENERGY_TOL) -> VerificationReport:
    report = VerificationReport()
    for p in molecules:
        for ch in channels or TABLE_CHANNELS:
            count = min(levels, morse_nmax(p, ch)[1])
            if count == 0:
                continue
            res = morse_pekeris_oracle(p, ch, count, points)
            expected = [morse_energy(p, n, ch).energy for n in range(count)]
            _record(report, "morse-pekeris", _label(p, ch), res, expected, tol, False)
    return report


def run_suites(names, molecules, points: int = 4096) -> VerificationReport:
    report = VerificationReport()
    for name in names:
        if name == "angular":
            report.extend(angular_suite(points))
        elif name == "kratzer":
            report.extend(kratzer_suite(molecules, points=points))
        elif name == "morse-pekeris":
            report.extend(morse_suite(molecules, points=points))
        else:
            raise ValueError(f"unknown suite {name!r}")
    return report


def approximation_gap(p: MoleculeParams, ch: AngularChannel, levels: int = 4, points: int = 4096) -> np.ndarray:
    """Exact-centrifugal Morse levels minus the closed-form Pekeris levels (eV)."""
    count = min(levels, morse_nmax(p, ch)[1])
    res = morse_true_centrifugal_oracle(p, ch, count, points)
    return res.best - np.array([morse_energy(p, n, ch).energy for n in range(count)])
