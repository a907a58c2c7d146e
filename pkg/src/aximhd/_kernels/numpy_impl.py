"""Pure-numpy kernels (reference implementation / numba fallback).

Conventions shared by both backends:

* arrays are (n_r + 1, n_z), radial index first, z periodic;
* row 0 is the axis: even-parity mirror (f[-1] == f[1]);
* row n_r is the Dirichlet wall: advection outputs are pinned to zero
  there and the Laplacian uses one-sided differences;
* every expression is written so the per-node arithmetic matches the
  numba loops bit for bit.
"""

import numpy as np


def laplace5d(f, cp, cm, h_r, h_z, r_max):
    """Apply d_rr + (3/r) d_r + d_zz to an even-parity field.

    cp/cm are the precomputed face coupling coefficients of the
    conservative radial stencil (cp[0] is the axis closure 8/h_r^2).
    """
    n_r = f.shape[0] - 1
    inv_hz2 = 1.0 / (h_z * h_z)
    inv_hr2 = 1.0 / (h_r * h_r)

    out = (np.roll(f, -1, axis=1) - 2.0 * f + np.roll(f, 1, axis=1)) * inv_hz2
    out[0] += cp[0] * (f[1] - f[0])
    out[1:n_r] += cp[1:n_r, None] * (f[2 : n_r + 1] - f[1:n_r]) - cm[
        1:n_r, None
    ] * (f[1:n_r] - f[0 : n_r - 1])
    # wall row: one-sided second-order d_rr and d_r
    d2 = (2.0 * f[n_r] - 5.0 * f[n_r - 1] + 4.0 * f[n_r - 2] - f[n_r - 3]) * inv_hr2
    d1 = (3.0 * f[n_r] - 4.0 * f[n_r - 1] + f[n_r - 2]) / (2.0 * h_r)
    out[n_r] += d2 + (3.0 / r_max) * d1
    return out


def upwind_advect(f, ur, uz, h_r, h_z):
    """-(u . grad) f with first-order directional upwinding."""
    n_r = f.shape[0] - 1
    inv_hr = 1.0 / h_r
    inv_hz = 1.0 / h_z

    fm = np.empty_like(f)
    fm[0] = f[1]  # even mirror
    fm[1:] = f[:-1]
    fp = np.empty_like(f)
    fp[:-1] = f[1:]
    fp[n_r] = f[n_r]  # dummy, wall row is pinned below

    dr = np.where(ur >= 0.0, (f - fm) * inv_hr, (fp - f) * inv_hr)
    dz = np.where(
        uz >= 0.0,
        (f - np.roll(f, 1, axis=1)) * inv_hz,
        (np.roll(f, -1, axis=1) - f) * inv_hz,
    )
    out = -(ur * dr + uz * dz)
    out[n_r] = 0.0
    return out


def _minmod(a, b):
    return 0.5 * (np.sign(a) + np.sign(b)) * np.minimum(np.abs(a), np.abs(b))


def muscl_advect(f, ur, uz, h_r, h_z):
    """-(u . grad) f, second-order MUSCL with minmod-limited slopes."""
    n_r = f.shape[0] - 1
    inv_hr = 1.0 / h_r
    inv_hz = 1.0 / h_z

    fm = np.empty_like(f)
    fm[0] = f[1]
    fm[1:] = f[:-1]
    fp = np.empty_like(f)
    fp[:-1] = f[1:]
    fp[n_r] = f[n_r]

    sr = _minmod(f - fm, fp - f)
    sr[n_r] = 0.0
    srm = np.empty_like(sr)
    srm[0] = -sr[1]  # slopes are odd under the axis mirror
    srm[1:] = sr[:-1]
    srp = np.empty_like(sr)
    srp[:-1] = sr[1:]
    srp[n_r] = 0.0

    dr = np.where(
        ur >= 0.0,
        (f - fm + 0.5 * (sr - srm)) * inv_hr,
        (fp - f - 0.5 * (srp - sr)) * inv_hr,
    )

    fzm = np.roll(f, 1, axis=1)
    fzp = np.roll(f, -1, axis=1)
    sz = _minmod(f - fzm, fzp - f)
    szm = np.roll(sz, 1, axis=1)
    szp = np.roll(sz, -1, axis=1)
    dz = np.where(
        uz >= 0.0,
        (f - fzm + 0.5 * (sz - szm)) * inv_hz,
        (fzp - f - 0.5 * (szp - sz)) * inv_hz,
    )

    out = -(ur * dr + uz * dz)
    out[n_r] = 0.0
    return out


def centered_advect(f, ur, uz, h_r, h_z):
    """-(u . grad) f with second-order centered differences (even f)."""
    n_r = f.shape[0] - 1
    half_hr = 0.5 / h_r
    half_hz = 0.5 / h_z

    dr = np.empty_like(f)
    dr[0] = 0.0  # even parity
    dr[1:n_r] = (f[2 : n_r + 1] - f[0 : n_r - 1]) * half_hr
    dr[n_r] = 0.0  # wall row pinned
    dz = (np.roll(f, -1, axis=1) - np.roll(f, 1, axis=1)) * half_hz

    out = -(ur * dr + uz * dz)
    out[n_r] = 0.0
    return out


def thomas_solve(dl, cprime, inv_denom, b):
    """Back-solve prefactored tridiagonal systems, one per row of b.

    dl/cprime/inv_denom come from the LU-style forward elimination done
    once per grid; only the right-hand side changes between calls.
    """
    m, n = b.shape
    x = np.empty_like(b)
    y = np.empty_like(b)
    y[:, 0] = b[:, 0] * inv_denom[:, 0]
    for i in range(1, n):
        y[:, i] = (b[:, i] - dl[:, i] * y[:, i - 1]) * inv_denom[:, i]
    x[:, n - 1] = y[:, n - 1]
    for i in range(n - 2, -1, -1):
        x[:, i] = y[:, i] - cprime[:, i] * x[:, i + 1]
    return x
