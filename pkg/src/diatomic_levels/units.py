"""Physical constants and unit conversions.

Everything inside the package works in eV, angstrom and atomic mass units.
Constants are CODATA 2018 values frozen in source.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    hbar_c: float  # eV * angstrom
    amu_c2: float  # eV
    wavenumber_per_ev: float  # cm^-1 per eV
    speed_of_light: float  # cm / s
    version: str = "CODATA-2018"

    def __post_init__(self):
        for name in ("hbar_c", "amu_c2", "wavenumber_per_ev", "speed_of_light"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


CODATA_2018 = PhysicalConstants(
    hbar_c=1973.269804,  # 197.3269804 MeV fm
    amu_c2=931494102.42,
    wavenumber_per_ev=8065.543937,
    speed_of_light=2.99792458e10,
)

CONSTANTS = CODATA_2018


def hbar2_over_2mu(mu: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """Return hbar^2 / (2 mu) in eV * angstrom^2 for a reduced mass in amu."""
    if not mu > 0 or not math.isfinite(mu):
        raise ValueError(f"reduced mass must be positive, got {mu!r}")
    return constants.hbar_c**2 / (2.0 * mu * constants.amu_c2)


def wavenumber_to_ev(w: float, constants: PhysicalConstants = CONSTANTS) -> float:
    return w / constants.wavenumber_per_ev


def ev_to_wavenumber(e: float, constants: PhysicalConstants = CONSTANTS) -> float:
    return e * constants.wavenumber_per_ev
