"""Stream-function solve: -(d_rr + (3/r) d_r + d_zz) q = omega, q = psi/r.

A real FFT in the periodic z direction decouples the problem into one
symmetric-positive tridiagonal radial system per axial mode, which is
prefactored once per grid and back-solved directly.  The discrete
radial operator is exactly the one applied by laplace5d_apply, so
applying the operator to the solution reproduces -omega to roundoff on
the solve rows (everything except the Dirichlet wall row).
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .grid import Grid, ScalarField, VelocityField, norm_lp
from .stencils import (
    d2dr2_values,
    d2dz2_values,
    ddr_values,
    ddz_values,
    laplace5d_values,
    over_r_values,
)


@dataclass
class StreamSolution:
    psi_over_r: ScalarField
    residual_norm: float


class _Solver:
    """Prefactored per-mode tridiagonal systems for one grid."""

    def __init__(self, grid):
        self.grid = grid
        n = grid.n_r  # unknowns i = 0..n_r-1, Dirichlet at n_r
        m = grid.n_z // 2 + 1
        cp, cm = grid.lap_coeffs
        # discrete symbol of -d_zz for rfft mode k
        k = np.arange(m)
        s = 4.0 * np.sin(np.pi * k / grid.n_z) ** 2 / grid.h_z**2

        diag = np.empty((m, n))
        diag[:, 0] = cp[0] + s
        diag[:, 1:] = (cp[1:n] + cm[1:n])[None, :] + s[:, None]
        lower = np.zeros((m, n))
        lower[:, 1:] = -cm[1:n][None, :]
        upper = np.zeros((m, n))
        upper[:, : n - 1] = -cp[: n - 1][None, :]

        # Thomas forward elimination, factored once (only rhs varies)
        denom = np.empty((m, n))
        cprime = np.empty((m, n))
        denom[:, 0] = diag[:, 0]
        cprime[:, 0] = upper[:, 0] / denom[:, 0]
        for i in range(1, n):
            denom[:, i] = diag[:, i] - lower[:, i] * cprime[:, i - 1]
            cprime[:, i] = upper[:, i] / denom[:, i]
        self._dl = np.ascontiguousarray(lower)
        self._cprime = np.ascontiguousarray(cprime)
        self._inv_denom = np.ascontiguousarray(1.0 / denom)

    def solve_values(self, omega_values):
        g = self.grid
        n = g.n_r
        b_hat = np.fft.rfft(omega_values, axis=1)
        b = np.ascontiguousarray(b_hat[:n].T)
        x = _kernels.thomas_solve(self._dl, self._cprime, self._inv_denom, b)
        q_hat = np.zeros((n + 1, b.shape[0]), dtype=np.complex128)
        q_hat[:n] = x.T
        return np.fft.irfft(q_hat, n=g.n_z, axis=1)


@lru_cache(maxsize=8)
def _solver_for(grid: Grid) -> _Solver:
    return _Solver(grid)


def solve_stream5d(omega, grid=None):
    """Solve for q = psi/r given omega (even parity, Dirichlet wall)."""
    if grid is None:
        grid = omega.grid
    elif grid != omega.grid:
        raise ValueError("grid does not match the field's grid")
    if omega.parity != "even":
        raise ValueError("stream solve requires an even-parity source")

    q = _solver_for(grid).solve_values(omega.values)

    res = -laplace5d_values(q, grid) - omega.values
    w = grid.weights_3d[: grid.n_r]
    res_sq = float(w @ (res[: grid.n_r] ** 2).sum(axis=1))
    residual = math.sqrt(2.0 * math.pi * grid.h_z * res_sq)
    return StreamSolution(ScalarField(grid, q, "even"), residual)


def velocity_values(q_values, grid):
    """Raw (u_r, u_z) samples from q = psi/r: u_r = -r d_z q, u_z = 2q + r d_r q."""
    r = grid.r[:, None]
    ur = -r * ddz_values(q_values, grid.h_z)
    uz = 2.0 * q_values + r * ddr_values(q_values, "even", grid.h_r)
    return ur, uz


def velocity_from_stream(sol):
    """Recover the meridional velocity from a stream solution.

    Expands u_z = (1/r) d_r(r psi) = 2q + r d_r q with q = psi/r, so the
    formulas stay finite on the axis; u_r vanishes there exactly.
    """
    q = sol.psi_over_r
    g = q.grid
    ur, uz = velocity_values(q.values, g)
    return VelocityField(ScalarField(g, ur, "odd"), ScalarField(g, uz, "even"))


def hessian_sq_values(q_values, grid):
    """|Hessian of q|^2 assembled from the four cylindrical pieces:

    (d_rr q)^2 + ((1/r) d_r q)^2 + (d_zz q)^2 + (d_rz q)^2,
    with the axis limit (1/r) d_r q -> d_rr q.
    """
    drr = d2dr2_values(q_values, "even", grid.h_r)
    dr = ddr_values(q_values, "even", grid.h_r)
    dr_over_r = over_r_values(dr, "odd", grid)
    dr_over_r[0] = drr[0]  # exact parity limit at the axis
    dzz = d2dz2_values(q_values, grid.h_z)
    drz = ddz_values(dr, grid.h_z)
    return drr**2 + dr_over_r**2 + dzz**2 + drz**2


def cz_operator_ratio(omega):
    """Empirical L^2 operator norm ratio || Hess(q) ||_2 / || omega ||_2.

    Returns 0 by convention for a zero source.
    """
    denom = norm_lp(omega, 2)
    if denom == 0.0:
        return 0.0
    sol = solve_stream5d(omega)
    hess = np.sqrt(hessian_sq_values(sol.psi_over_r.values, omega.grid))
    num = norm_lp(ScalarField(omega.grid, hess, "even"), 2)
    return num / denom
