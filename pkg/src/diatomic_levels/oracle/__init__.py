from .fd import (
    AngularProblem,
    GridError,
    GridSpec,
    OracleResult,
    RadialProblem,
    angular_grid,
    convergence_study,
    kratzer_grid,
    morse_grid,
    solve_angular_fd,
    solve_radial_fd,
)
from .kernels import BACKEND
