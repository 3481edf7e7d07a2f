"""Closed-form solution of the polar equation with the A/sin^2 + B/cos^2 potential.

The azimuthal part contributes E_phi = m^2, so only Ã = m^2 + A enters.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

QUANTA_TOL = 1e-9


class NonQuantizedError(ValueError):
    """ℓ̃ is not reachable from the channel with an integer number of quanta."""


@dataclass(frozen=True)
class AngularChannel:
    n_tilde: int
    m: int
    A: float
    B: float
    parity: str | None = None  # "even" | "odd"; only meaningful when B == 0

    def __post_init__(self):
        if int(self.n_tilde) != self.n_tilde or self.n_tilde < 0:
            raise ValueError(f"n_tilde must be a non-negative integer, got {self.n_tilde!r}")
        if int(self.m) != self.m:
            raise ValueError(f"m must be an integer, got {self.m!r}")
        for name in ("A", "B"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise ValueError(f"{name} must be a finite non-negative number, got {v!r}")
        if self.parity not in (None, "even", "odd"):
            raise ValueError(f"parity must be 'even' or 'odd', got {self.parity!r}")

    @property
    def a_tilde(self) -> float:
        return self.m * self.m + self.A

    @property
    def effective_parity(self) -> str | None:
        if self.B > 0:
            return None
        return self.parity or "even"


@dataclass(frozen=True)
class AngularSolution:
    e_theta: float
    ell_tilde: float


@dataclass(frozen=True)
class NuRootCheck:
    """Roots of the quadratic in k and the radicand coefficients at k2."""

    alpha_q: float
    beta_q: float
    gamma_q: float
    k1: float
    k2: float

    @property
    def discriminant(self) -> float:
        return self.beta_q**2 - 4.0 * self.alpha_q * self.gamma_q


def angular_eigenvalue(ch: AngularChannel) -> AngularSolution:
    root_a = math.sqrt(ch.a_tilde)
    if ch.B > 0:
        if ch.parity is not None:
            warnings.warn(f"parity {ch.parity!r} ignored for B={ch.B:g} > 0", stacklevel=2)
        ell = 0.5 + 2 * ch.n_tilde + root_a + math.sqrt(0.25 + ch.B)
    else:
        nu = 2 * ch.n_tilde if ch.effective_parity == "even" else 1 + 2 * ch.n_tilde
        ell = nu + root_a
    return AngularSolution(e_theta=ell * (ell + 1.0), ell_tilde=ell)


def ell_tilde_offset(m: int, A: float, B: float) -> float:
    """The ñ-independent part of ℓ̃ for B > 0."""
    return 0.5 + math.sqrt(m * m + A) + math.sqrt(0.25 + B)


def oscillation_quanta(ell_tilde: float, m: int, A: float, B: float) -> int:
    """Invert ℓ̃ -> ñ for a B > 0 channel."""
    if not B > 0:
        raise ValueError("oscillation_quanta needs B > 0")
    if A < 0:
        raise ValueError("A must be non-negative")
    offset = ell_tilde_offset(m, A, B)
    if ell_tilde < offset - QUANTA_TOL:
        raise ValueError(f"ell_tilde={ell_tilde!r} is below the channel minimum {offset!r}")
    half = 0.5 * (ell_tilde - offset)
    n = round(half)
    if abs(half - n) > QUANTA_TOL:
        raise NonQuantizedError(
            f"ell_tilde={ell_tilde!r} gives {half!r} quanta for m={m}, A={A}, B={B}"
        )
    return int(n)


def nu_k_roots(a_tilde: float, B: float, e_theta: float) -> NuRootCheck:
    if a_tilde < 0 or B < 0:
        raise ValueError("a_tilde and B must be non-negative")
    centre = -0.5 * (a_tilde + B - e_theta)
    half_width = 0.5 * math.sqrt(a_tilde * (1.0 + 4.0 * B))
    k1, k2 = centre + half_width, centre - half_width
    # k2 is the branch giving tau' < 0
    alpha_q = 4.0 * e_theta - 8.0 * k2 + 1.0
    beta_q = 4.0 * e_theta - 4.0 * a_tilde + 4.0 * B - 8.0 * k2 + 2.0
    gamma_q = 1.0 + 4.0 * B
    return NuRootCheck(alpha_q, beta_q, gamma_q, k1, k2)


def radicand_coefficients(a_tilde: float, B: float, e_theta: float, k: float) -> tuple[float, float, float]:
    """(alpha, beta, gamma) of the radicand alpha x^2 - beta x + gamma for any k."""
    return (
        4.0 * e_theta - 8.0 * k + 1.0,
        4.0 * e_theta - 4.0 * a_tilde + 4.0 * B - 8.0 * k + 2.0,
        1.0 + 4.0 * B,
    )


def tau_slope(a_tilde: float, B: float) -> float:
    """Derivative of the NU tau polynomial on the selected branch (always negative)."""
    return -(4.0 + 2.0 * math.sqrt(a_tilde) + math.sqrt(1.0 + 4.0 * B))
