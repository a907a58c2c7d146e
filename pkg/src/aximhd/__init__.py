"""aximhd: axisymmetric swirl-magnetic MHD simulator and verifier.

Evolves the reduced pair (pi, omega) = (B_theta/r, omega_theta/r) on a
truncated cylinder with a direct five-dimensional-Laplacian stream
solve, and machine-checks the conserved / monotone quantities and
integral inequalities the system satisfies, plus a Monte-Carlo
classifier for radial power Muckenhoupt weights on R^5.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .apweight import ApProbe, ApReport, ap_constant, ap_sweep, bounded_window
from .diagnostics import (
    CheckReport,
    DiagnosticsRecord,
    check_cz_ratio,
    check_curl_identity,
    check_energy_law,
    check_ineq2,
    check_ineq31,
    check_max_principle,
    check_pi_l2_monotone,
    record,
    write_records_csv,
)
from .errors import BlowUpError, ConfigError
from .evolve import AxiState, RunConfig, cfl_dt, make_state, rhs_omega, rhs_pi, run, step
from .grid import (
    Grid,
    ScalarField,
    VelocityField,
    make_grid,
    norm_lp,
    read_field,
    write_field,
)
from .initial import make_initial
from .poisson5d import (
    StreamSolution,
    cz_operator_ratio,
    solve_stream5d,
    velocity_from_stream,
)
from .stencils import ddr, ddz, laplace5d_apply

__version__ = "0.1.0"
