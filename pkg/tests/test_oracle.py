import math

import numpy as np
import pytest

from diatomic_levels.angular import AngularChannel, angular_eigenvalue
from diatomic_levels.oracle.fd import (
    AngularProblem,
    GridError,
    GridSpec,
    RadialProblem,
    angular_grid,
    convergence_study,
    kratzer_grid,
    observed_order,
    solve_angular_fd,
    solve_radial_fd,
)
from diatomic_levels.radial import kratzer_energy, kratzer_potential
from diatomic_levels.units import hbar2_over_2mu
from diatomic_levels.verification import kratzer_oracle

KAPPA = 10.0  # eV / angstrom^2
R0 = 5.0


def harmonic(r):
    return 0.5 * KAPPA * (r - R0) ** 2


def harmonic_levels(k):
    hbar_omega = math.sqrt(2 * hbar2_over_2mu(1.0) * KAPPA)
    return hbar_omega * (np.arange(k) + 0.5)


def test_grid_invariants():
    with pytest.raises(GridError):
        GridSpec(1.0, 1.0, 128)
    with pytest.raises(GridError):
        GridSpec(0.0, 1.0, 63)
    with pytest.raises(GridError):
        GridSpec(0.0, 1.0, 128, "periodic")
    g = GridSpec(0.0, 1.0, 64)
    assert g.nodes()[0] == pytest.approx(g.step / 2)


def test_harmonic_oscillator():
    res = solve_radial_fd(harmonic, 1.0, GridSpec(R0 - 3, R0 + 3, 4096), 4)
    assert res.eigenvalues == pytest.approx(harmonic_levels(4), rel=1e-4)
    assert res.best == pytest.approx(harmonic_levels(4), rel=1e-7)
    assert np.all(np.diff(res.eigenvalues) > 0)
    assert 1.5 <= res.convergence_order <= 2.5


def test_particle_in_box():
    L = 3.0
    res = solve_radial_fd(lambda r: np.zeros_like(r), 1.0, GridSpec(0.0, L, 2048), 4)
    exact = hbar2_over_2mu(1.0) * (np.arange(1, 5) * math.pi / L) ** 2
    assert res.eigenvalues == pytest.approx(exact, rel=1e-4)


def test_neumann_upper_wall():
    L = 2.0
    grid = GridSpec(0.0, L, 2048, "dirichlet_lower_neumann_upper")
    res = solve_radial_fd(lambda r: 0.0 * r, 1.0, grid, 3)
    exact = hbar2_over_2mu(1.0) * ((np.arange(3) + 0.5) * math.pi / L) ** 2
    assert res.eigenvalues == pytest.approx(exact, rel=1e-4)


def test_radial_errors():
    grid = GridSpec(0.0, 1.0, 64)
    with pytest.raises(GridError):
        solve_radial_fd(harmonic, 1.0, grid, 17)
    with pytest.raises(ValueError):
        solve_radial_fd(lambda r: np.where(r > 0.5, np.nan, 0.0), 1.0, grid, 2)


def test_kratzer_cross_validation(molecule):
    p = molecule("ScH")
    ch = AngularChannel(0, 0, 1.0, 9.0)
    res = kratzer_oracle(p, ch, 1)
    assert res.eigenvalues[0] == pytest.approx(-2.195, abs=1e-3)
    assert res.best[0] == pytest.approx(kratzer_energy(p, 0, ch).energy, abs=1e-3)


def test_legendre_even():
    res = solve_angular_fd(0.0, 0.0, 0, angular_grid(0.0, 0.0, 0, 2048, "even"), 3)
    assert res.eigenvalues[0] == pytest.approx(0.0, abs=1e-3)
    assert res.eigenvalues[1:] == pytest.approx([6.0, 20.0], rel=1e-3)


def test_legendre_odd():
    res = solve_angular_fd(0.0, 0.0, 0, angular_grid(0.0, 0.0, 0, 2048, "odd"), 3)
    assert res.eigenvalues == pytest.approx([2.0, 12.0, 30.0], rel=1e-3)


def test_angular_ring_potential():
    res = solve_angular_fd(1.0, 9.0, 0, angular_grid(1.0, 9.0, 0, 2048), 2)
    assert res.eigenvalues[0] == pytest.approx(25.1665, rel=1e-3)
    assert res.eigenvalues[1] == pytest.approx(angular_eigenvalue(AngularChannel(1, 0, 1.0, 9.0)).e_theta, rel=1e-3)


@pytest.mark.parametrize("A, B, m", [(1.0, 9.0, 0), (9.0, 1.0, 2), (1.0, 1.0, 1)])
def test_clipping_insensitive(A, B, m):
    a = solve_angular_fd(A, B, m, angular_grid(A, B, m, 2048, eps=1e-4), 4, refine=False).eigenvalues
    b = solve_angular_fd(A, B, m, angular_grid(A, B, m, 2048, eps=5e-5), 4, refine=False).eigenvalues
    assert np.all(np.abs(a / b - 1) < 1e-4)


def test_angular_rejects_negative():
    with pytest.raises(ValueError):
        solve_angular_fd(-1.0, 0.0, 0, angular_grid(1.0, 1.0, 0, 128), 2)


def test_observed_order_exact_power_law():
    steps = (0.4, 0.2, 0.1)
    assert observed_order([1 + 3 * h**2 for h in steps], steps) == pytest.approx(2.0)
    uneven = (0.3, 0.2, 0.1)
    assert observed_order([1 + 3 * h**1.7 for h in uneven], uneven) == pytest.approx(1.7, rel=1e-8)
    assert math.isnan(observed_order([1.0, 1.0, 1.0], steps))


def test_convergence_harmonic_order():
    grids = [GridSpec(R0 - 3, R0 + 3, n) for n in (512, 1024, 2048)]
    table = convergence_study(RadialProblem(harmonic, 1.0, 3), grids)
    assert np.all(np.abs(table.final_orders - 2.0) <= 0.3)
    assert np.all(np.isnan(table.rows[0].orders))
    assert table.extrapolated == pytest.approx(harmonic_levels(3), rel=1e-6)


def test_convergence_kratzer_stable(molecule):
    p = molecule("ScH")
    e_theta = angular_eigenvalue(AngularChannel(0, 0, 1.0, 9.0)).e_theta
    c = hbar2_over_2mu(p.mu)
    problem = RadialProblem(lambda r: kratzer_potential(p, r) + c * e_theta / r**2, p.mu, 1)
    first = convergence_study(problem, [kratzer_grid(p.re, n) for n in (1024, 2048, 4096)])
    second = convergence_study(problem, [kratzer_grid(p.re, n) for n in (2048, 4096, 8192)])
    assert abs(first.extrapolated[0] - second.extrapolated[0]) < 1e-4
    values = [row.eigenvalues[0] for row in second.rows]
    # monotone approach to the limit
    gaps = [abs(v - second.extrapolated[0]) for v in values]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_convergence_flags():
    grids = [GridSpec(R0 - 3, R0 + 3, n) for n in (128, 256, 512)]
    table = convergence_study(RadialProblem(harmonic, 1.0, 2), grids, tol=1e-9)
    assert table.flagged == [0, 1]
    assert convergence_study(RadialProblem(harmonic, 1.0, 2), grids, tol=1.0).flagged == []


def test_convergence_angular():
    grids = [angular_grid(1.0, 9.0, 1, n) for n in (256, 512, 1024)]
    table = convergence_study(AngularProblem(1.0, 9.0, 1, 2), grids)
    assert np.all(np.abs(table.final_orders - 2.0) <= 0.3)


def test_convergence_preconditions():
    g = GridSpec(0.0, 1.0, 128)
    with pytest.raises(GridError):
        convergence_study(RadialProblem(harmonic, 1.0, 1), [g, g, g])
    with pytest.raises(GridError):
        convergence_study(RadialProblem(harmonic, 1.0, 1), [g, g.with_points(256)])
