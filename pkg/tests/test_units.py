import pytest
from hypothesis import given
from hypothesis import strategies as st

from diatomic_levels.units import CONSTANTS, ev_to_wavenumber, hbar2_over_2mu, wavenumber_to_ev

# Frozen from scipy.constants (SI): hbar^2 / (2 u) / e * 1e20, and e / (h c 100)
HBAR2_2U = 2.0900796e-3
CM1_PER_EV = 8065.543937


def test_constant_ranges():
    assert 1973.2 <= CONSTANTS.hbar_c <= 1973.4
    assert 9.314e8 <= CONSTANTS.amu_c2 <= 9.316e8
    assert 8065.5 <= CONSTANTS.wavenumber_per_ev <= 8065.6
    assert CONSTANTS.speed_of_light > 0


@pytest.mark.parametrize("mu, expected", [(1.0, 2.0901e-3), (0.986040, 2.1197e-3)])
def test_hbar2_over_2mu_examples(mu, expected):
    assert hbar2_over_2mu(mu) == pytest.approx(expected, abs=1e-6)
    assert hbar2_over_2mu(mu) == pytest.approx(HBAR2_2U / mu, rel=1e-7)


def test_hbar2_over_2mu_halves():
    assert hbar2_over_2mu(2.0) == pytest.approx(hbar2_over_2mu(1.0) / 2, rel=1e-15)


@pytest.mark.parametrize("mu", [0.0, -1.0, float("nan")])
def test_hbar2_over_2mu_rejects_bad_mass(mu):
    with pytest.raises(ValueError):
        hbar2_over_2mu(mu)


def test_wavenumber_examples():
    assert wavenumber_to_ev(8065.544) == pytest.approx(1.0, abs=1e-5)
    assert wavenumber_to_ev(0) == 0
    assert wavenumber_to_ev(1572) == pytest.approx(0.19490, abs=1e-4)
    assert CONSTANTS.wavenumber_per_ev == pytest.approx(CM1_PER_EV, rel=1e-9)


@given(st.floats(-1e6, 1e6, allow_nan=False))
def test_wavenumber_round_trip(w):
    assert ev_to_wavenumber(wavenumber_to_ev(w)) == pytest.approx(w, rel=1e-12, abs=1e-300)


@given(st.floats(1e-3, 1e3))
def test_hbar2_over_2mu_scaling(mu):
    assert hbar2_over_2mu(mu) * mu == pytest.approx(hbar2_over_2mu(1.0), rel=1e-12)
