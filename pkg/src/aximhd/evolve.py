"""Heun (RK2) time integration of the reduced swirl-MHD system.

State variables: pi = B_theta / r (transported; diffused when resistive)
and omega = omega_theta / r (centered advection + always-on unit
viscosity through the 5D Laplacian, forced by -d_z(pi^2)).  The
velocity is re-derived from omega through the stream solve at every
Runge-Kutta stage.  pi advection uses a monotone scheme so the
continuous maximum principle holds discretely.
"""

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import BlowUpError, ConfigError
from .grid import Grid, ScalarField, VelocityField, norm_lp
from .initial import make_initial
from .poisson5d import _solver_for, velocity_values
from .stencils import ddz_values, laplace5d_values
from . import _kernels

MODES = ("ideal", "resistive")
PI_SCHEMES = ("upwind1", "muscl-minmod")
OMEGA_SCHEMES = ("centered2",)


@dataclass
class RunConfig:
    grid: Grid
    mode: str
    t_end: float
    cfl_adv: float = 0.4
    cfl_diff: float = 0.2
    dt_max: float = 0.1
    pi_scheme: str = "upwind1"
    omega_scheme: str = "centered2"
    output_every: int = 1
    initial_name: str = "zero"
    initial_params: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r} (have {MODES})")
        if self.pi_scheme not in PI_SCHEMES:
            raise ConfigError(f"unknown pi_scheme {self.pi_scheme!r} (have {PI_SCHEMES})")
        if self.omega_scheme not in OMEGA_SCHEMES:
            raise ConfigError(
                f"unknown omega_scheme {self.omega_scheme!r} (have {OMEGA_SCHEMES})"
            )
        for name in ("cfl_adv", "cfl_diff"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise ConfigError(f"{name} must lie in (0, 1), got {v}")
        if self.t_end < 0.0:
            raise ConfigError(f"t_end must be >= 0, got {self.t_end}")
        if self.dt_max <= 0.0:
            raise ConfigError(f"dt_max must be positive, got {self.dt_max}")
        if self.output_every < 1:
            raise ConfigError(f"output_every must be >= 1, got {self.output_every}")


@dataclass
class AxiState:
    """Complete dynamical state at one time; velocity is derived from omega."""

    time: float
    pi: ScalarField
    omega_red: ScalarField
    velocity: VelocityField
    mode: str

    @property
    def grid(self):
        return self.pi.grid


def make_state(grid, pi, omega, mode, time=0.0):
    """Assemble a state, deriving the velocity from omega."""
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}")
    q = _solver_for(grid).solve_values(omega.values)
    ur, uz = velocity_values(q, grid)
    vel = VelocityField(ScalarField(grid, ur, "odd"), ScalarField(grid, uz, "even"))
    return AxiState(time, pi, omega, vel, mode)


def _advect(values, ur, uz, grid, scheme):
    if scheme == "upwind1":
        return _kernels.upwind_advect(values, ur, uz, grid.h_r, grid.h_z)
    if scheme == "muscl-minmod":
        return _kernels.muscl_advect(values, ur, uz, grid.h_r, grid.h_z)
    if scheme == "centered2":
        return _kernels.centered_advect(values, ur, uz, grid.h_r, grid.h_z)
    raise ConfigError(f"unknown scheme {scheme!r}")


def _rhs_pi_values(pi, ur, uz, grid, mode, pi_scheme):
    out = _advect(pi, ur, uz, grid, pi_scheme)
    if mode == "resistive":
        out = out + laplace5d_values(pi, grid)
    return out


def _rhs_omega_values(om, pi, ur, uz, grid, omega_scheme):
    adv = _advect(om, ur, uz, grid, omega_scheme)
    return adv + laplace5d_values(om, grid) - ddz_values(pi * pi, grid.h_z)


def rhs_pi(state, pi_scheme="upwind1"):
    """Tendency of pi: monotone transport, plus 5D diffusion if resistive."""
    vals = _rhs_pi_values(
        state.pi.values,
        state.velocity.u_r.values,
        state.velocity.u_z.values,
        state.grid,
        state.mode,
        pi_scheme,
    )
    return ScalarField(state.grid, vals, "even")


def rhs_omega(state, omega_scheme="centered2"):
    """Tendency of omega: advection + 5D diffusion + swirl forcing -d_z pi^2."""
    vals = _rhs_omega_values(
        state.omega_red.values,
        state.pi.values,
        state.velocity.u_r.values,
        state.velocity.u_z.values,
        state.grid,
        omega_scheme,
    )
    return ScalarField(state.grid, vals, "even")


def cfl_dt(state, config):
    """dt = min(dt_max, advective bound, diffusive bound), unit coefficients."""
    g = config.grid
    h = min(g.h_r, g.h_z)
    ur = state.velocity.u_r.values
    uz = state.velocity.u_z.values
    umax = math.sqrt(float(np.max(ur * ur + uz * uz)))
    dt_adv = config.cfl_adv * h / max(umax, 1e-12)
    dt_diff = config.cfl_diff * h * h / 1.0
    return min(config.dt_max, dt_adv, dt_diff)


def step(state, config, dt=None):
    """Advance one Heun step, re-solving the velocity at each stage."""
    if dt is None:
        dt = cfl_dt(state, config)
    g = config.grid
    solver = _solver_for(g)
    n_r = g.n_r

    pi0 = state.pi.values
    om0 = state.omega_red.values
    ur0 = state.velocity.u_r.values
    uz0 = state.velocity.u_z.values

    # predictor
    pi1 = pi0 + dt * _rhs_pi_values(pi0, ur0, uz0, g, config.mode, config.pi_scheme)
    om1 = om0 + dt * _rhs_omega_values(om0, pi0, ur0, uz0, g, config.omega_scheme)
    pi1[n_r] = 0.0
    om1[n_r] = 0.0
    q1 = solver.solve_values(om1)
    ur1, uz1 = velocity_values(q1, g)

    # corrector: average of the initial state and an Euler step from the predictor
    pi2 = pi1 + dt * _rhs_pi_values(pi1, ur1, uz1, g, config.mode, config.pi_scheme)
    om2 = om1 + dt * _rhs_omega_values(om1, pi1, ur1, uz1, g, config.omega_scheme)
    pi_new = 0.5 * (pi0 + pi2)
    om_new = 0.5 * (om0 + om2)
    pi_new[n_r] = 0.0
    om_new[n_r] = 0.0

    if not (np.all(np.isfinite(pi_new)) and np.all(np.isfinite(om_new))):
        raise BlowUpError(
            state.time + dt,
            step=-1,
            norms={
                "pi_linf": norm_lp(state.pi, math.inf),
                "pi_l2": norm_lp(state.pi, 2),
                "omega_l2": norm_lp(state.omega_red, 2),
            },
        )

    qn = solver.solve_values(om_new)
    urn, uzn = velocity_values(qn, g)
    return AxiState(
        state.time + dt,
        ScalarField(g, pi_new, "even"),
        ScalarField(g, om_new, "even"),
        VelocityField(ScalarField(g, urn, "odd"), ScalarField(g, uzn, "even")),
        config.mode,
    )


def run(config, on_record=None):
    """Integrate to t_end, emitting a diagnostics record every output_every
    steps (plus the initial and final states).

    Returns (final state, list of records).  Deterministic for a fixed
    config.  A blow-up aborts by raising BlowUpError carrying the step
    index and the records emitted so far.  on_record, when given, is
    called as on_record(state, record, step_index) at each emission.
    """
    from .diagnostics import fill_interval_residuals, record

    g = config.grid
    pi0, om0 = make_initial(config.initial_name, config.initial_params, grid=g)
    state = make_state(g, pi0, om0, config.mode)

    records = [record(state, cfl_dt(state, config))]
    if on_record is not None:
        on_record(state, records[0], 0)
    nstep = 0
    t_end = config.t_end
    while state.time < t_end and not math.isclose(state.time, t_end, rel_tol=1e-12):
        dt = min(cfl_dt(state, config), t_end - state.time)
        try:
            state = step(state, config, dt)
        except BlowUpError as err:
            err.step = nstep + 1
            fill_interval_residuals(records)
            err.records = records
            raise
        nstep += 1
        if nstep % config.output_every == 0 or state.time >= t_end:
            records.append(record(state, dt))
            if on_record is not None:
                on_record(state, records[-1], nstep)
    fill_interval_residuals(records)
    return state, records
