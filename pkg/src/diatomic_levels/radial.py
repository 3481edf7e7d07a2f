"""Closed-form bound-state energies for the Morse and Kratzer wells.

The Morse spectrum uses the Pekeris expansion of the centrifugal term about
r_e; the Kratzer spectrum is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .angular import AngularChannel, AngularSolution, angular_eigenvalue
from .catalog import MoleculeParams, morse_width
from .units import hbar2_over_2mu


class UnboundLevelError(ValueError):
    def __init__(self, n: int, n_max: float, bound_count: int):
        self.n = n
        self.n_max = n_max
        self.bound_count = bound_count
        super().__init__(
            f"n={n} is past the last bound Morse level (n_max={n_max:.4f}, {bound_count} levels)"
        )


@dataclass(frozen=True)
class PekerisCoefficients:
    alpha: float
    d0: float
    d1: float
    d2: float


@dataclass(frozen=True)
class EnergyLevel:
    molecule: str
    potential: str  # "morse" | "kratzer"
    n: int
    channel: AngularChannel | None
    energy: float  # eV
    e_theta: float
    ell_tilde: float
    aux: dict = field(default_factory=dict, compare=False)


def pekeris_coefficients(alpha: float) -> PekerisCoefficients:
    """Coefficients of r_e^2/r^2 ~ d0 + d1 exp(-alpha x) + d2 exp(-2 alpha x).

    Matched through second order in x = (r - r_e)/r_e.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    inv = 1.0 / alpha
    inv2 = inv * inv
    return PekerisCoefficients(
        alpha=alpha,
        d0=1.0 - 3.0 * inv + 3.0 * inv2,
        d1=4.0 * inv - 6.0 * inv2,
        d2=-inv + 3.0 * inv2,
    )


def _solution(ch) -> tuple[AngularChannel | None, AngularSolution]:
    if isinstance(ch, AngularChannel):
        return ch, angular_eigenvalue(ch)
    if isinstance(ch, AngularSolution):
        return None, ch
    raise TypeError(f"expected AngularChannel or AngularSolution, got {type(ch).__name__}")


def _width(p: MoleculeParams) -> float:
    return p.a if p.a is not None else morse_width(p)


def morse_c(p: MoleculeParams, sol: AngularSolution) -> float:
    """C_{ñm}: the parabola vertex of the Morse spectrum sits at n = C - 1/2."""
    k = hbar2_over_2mu(p.mu)
    a = _width(p)
    pk = pekeris_coefficients(a * p.re)
    et = sol.e_theta
    re2 = p.re * p.re
    denom = math.sqrt(a * a * p.De / k + a * a * et * pk.d2 / re2)
    return (p.De / k - et / re2 * (pk.d1 / 2.0)) / denom


def morse_nmax(p: MoleculeParams, sol) -> tuple[float, int]:
    """Return ``(n_max, bound_count)``.

    n_max = C - 1/2 is the real-valued vertex. ``bound_count`` = floor(C) is
    n_max rounded to the nearest integer, i.e. the number of levels n whose
    successor still lies higher (E_{n+1} > E_n).
    """
    _, sol = _solution(sol)
    c = morse_c(p, sol)
    return c - 0.5, max(0, math.floor(c))


def morse_energy(p: MoleculeParams, n: int, ch) -> EnergyLevel:
    if n < 0 or int(n) != n:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    channel, sol = _solution(ch)
    k = hbar2_over_2mu(p.mu)
    a = _width(p)
    pk = pekeris_coefficients(a * p.re)
    c = morse_c(p, sol)
    n_max, count = c - 0.5, max(0, math.floor(c))
    if n >= count:
        raise UnboundLevelError(n, n_max, count)
    energy = k * sol.e_theta / p.re**2 * pk.d0 - k * a * a * (c - (n + 0.5)) ** 2
    return EnergyLevel(
        molecule=p.name,
        potential="morse",
        n=int(n),
        channel=channel,
        energy=energy,
        e_theta=sol.e_theta,
        ell_tilde=sol.ell_tilde,
        aux={"c_nm": c, "n_max": n_max, "bound_count": count},
    )


def kratzer_d(p: MoleculeParams, sol: AngularSolution) -> float:
    return p.De * p.re**2 / hbar2_over_2mu(p.mu) + sol.e_theta


def kratzer_energy(p: MoleculeParams, n: int, ch) -> EnergyLevel:
    if n < 0 or int(n) != n:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    channel, sol = _solution(ch)
    k = hbar2_over_2mu(p.mu)
    d = kratzer_d(p, sol)
    strength = 2.0 * p.De * p.re / k
    energy = -k * strength**2 / (1.0 + 2.0 * n + math.sqrt(1.0 + 4.0 * d)) ** 2
    return EnergyLevel(
        molecule=p.name,
        potential="kratzer",
        n=int(n),
        channel=channel,
        energy=energy,
        e_theta=sol.e_theta,
        ell_tilde=sol.ell_tilde,
        aux={"d_nm": d},
    )


def morse_potential(p: MoleculeParams, r):
    a = _width(p)
    y = np.exp(-a * (r - p.re))
    return p.De * (y * y - 2.0 * y)


def kratzer_potential(p: MoleculeParams, r):
    return -p.De + p.De * ((r - p.re) / r) ** 2


def pekeris_centrifugal(p: MoleculeParams, e_theta: float, r):
    """hbar^2 E_theta / (2 mu r_e^2) * (d0 + d1 e^{-alpha x} + d2 e^{-2 alpha x})."""
    a = _width(p)
    pk = pekeris_coefficients(a * p.re)
    y = np.exp(-a * (r - p.re))
    return hbar2_over_2mu(p.mu) * e_theta / p.re**2 * (pk.d0 + pk.d1 * y + pk.d2 * y * y)
