"""Numba-compiled kernels; same contracts and arithmetic as numpy_impl."""

import numpy as np
from numba import njit


@njit(cache=True)
def laplace5d(f, cp, cm, h_r, h_z, r_max):
    n_r = f.shape[0] - 1
    n_z = f.shape[1]
    inv_hz2 = 1.0 / (h_z * h_z)
    inv_hr2 = 1.0 / (h_r * h_r)
    out = np.empty_like(f)
    for i in range(n_r + 1):
        for j in range(n_z):
            jm = j - 1 if j > 0 else n_z - 1
            jp = j + 1 if j < n_z - 1 else 0
            zz = (f[i, jp] - 2.0 * f[i, j] + f[i, jm]) * inv_hz2
            if i == 0:
                rad = cp[0] * (f[1, j] - f[0, j])
            elif i < n_r:
                rad = cp[i] * (f[i + 1, j] - f[i, j]) - cm[i] * (
                    f[i, j] - f[i - 1, j]
                )
            else:
                d2 = (
                    2.0 * f[n_r, j]
                    - 5.0 * f[n_r - 1, j]
                    + 4.0 * f[n_r - 2, j]
                    - f[n_r - 3, j]
                ) * inv_hr2
                d1 = (3.0 * f[n_r, j] - 4.0 * f[n_r - 1, j] + f[n_r - 2, j]) / (
                    2.0 * h_r
                )
                rad = d2 + (3.0 / r_max) * d1
            out[i, j] = zz + rad
    return out


@njit(cache=True)
def upwind_advect(f, ur, uz, h_r, h_z):
    n_r = f.shape[0] - 1
    n_z = f.shape[1]
    inv_hr = 1.0 / h_r
    inv_hz = 1.0 / h_z
    out = np.empty_like(f)
    for i in range(n_r + 1):
        for j in range(n_z):
            if i == n_r:
                out[i, j] = 0.0
                continue
            jm = j - 1 if j > 0 else n_z - 1
            jp = j + 1 if j < n_z - 1 else 0
            fm = f[1, j] if i == 0 else f[i - 1, j]
            if ur[i, j] >= 0.0:
                dr = (f[i, j] - fm) * inv_hr
            else:
                dr = (f[i + 1, j] - f[i, j]) * inv_hr
            if uz[i, j] >= 0.0:
                dz = (f[i, j] - f[i, jm]) * inv_hz
            else:
                dz = (f[i, jp] - f[i, j]) * inv_hz
            out[i, j] = -(ur[i, j] * dr + uz[i, j] * dz)
    return out


@njit(cache=True, inline="always")
def _minmod(a, b):
    return 0.5 * (np.sign(a) + np.sign(b)) * min(abs(a), abs(b))


@njit(cache=True)
def muscl_advect(f, ur, uz, h_r, h_z):
    n_r = f.shape[0] - 1
    n_z = f.shape[1]
    inv_hr = 1.0 / h_r
    inv_hz = 1.0 / h_z

    sr = np.empty_like(f)
    sz = np.empty_like(f)
    for i in range(n_r + 1):
        for j in range(n_z):
            jm = j - 1 if j > 0 else n_z - 1
            jp = j + 1 if j < n_z - 1 else 0
            if i == n_r:
                sr[i, j] = 0.0
            else:
                fm = f[1, j] if i == 0 else f[i - 1, j]
                sr[i, j] = _minmod(f[i, j] - fm, f[i + 1, j] - f[i, j])
            sz[i, j] = _minmod(f[i, j] - f[i, jm], f[i, jp] - f[i, j])

    out = np.empty_like(f)
    for i in range(n_r + 1):
        for j in range(n_z):
            if i == n_r:
                out[i, j] = 0.0
                continue
            jm = j - 1 if j > 0 else n_z - 1
            jp = j + 1 if j < n_z - 1 else 0
            fm = f[1, j] if i == 0 else f[i - 1, j]
            srm = -sr[1, j] if i == 0 else sr[i - 1, j]
            if ur[i, j] >= 0.0:
                dr = (f[i, j] - fm + 0.5 * (sr[i, j] - srm)) * inv_hr
            else:
                dr = (f[i + 1, j] - f[i, j] - 0.5 * (sr[i + 1, j] - sr[i, j])) * inv_hr
            if uz[i, j] >= 0.0:
                dz = (f[i, j] - f[i, jm] + 0.5 * (sz[i, j] - sz[i, jm])) * inv_hz
            else:
                dz = (f[i, jp] - f[i, j] - 0.5 * (sz[i, jp] - sz[i, j])) * inv_hz
            out[i, j] = -(ur[i, j] * dr + uz[i, j] * dz)
    return out


@njit(cache=True)
def centered_advect(f, ur, uz, h_r, h_z):
    n_r = f.shape[0] - 1
    n_z = f.shape[1]
    half_hr = 0.5 / h_r
    half_hz = 0.5 / h_z
    out = np.empty_like(f)
    for i in range(n_r + 1):
        for j in range(n_z):
            if i == n_r:
                out[i, j] = 0.0
                continue
            jm = j - 1 if j > 0 else n_z - 1
            jp = j + 1 if j < n_z - 1 else 0
            dr = 0.0 if i == 0 else (f[i + 1, j] - f[i - 1, j]) * half_hr
            dz = (f[i, jp] - f[i, jm]) * half_hz
            out[i, j] = -(ur[i, j] * dr + uz[i, j] * dz)
    return out


@njit(cache=True)
def thomas_solve(dl, cprime, inv_denom, b):
    m, n = b.shape
    x = np.empty_like(b)
    y = np.empty_like(b)
    for k in range(m):
        y[k, 0] = b[k, 0] * inv_denom[k, 0]
        for i in range(1, n):
            y[k, i] = (b[k, i] - dl[k, i] * y[k, i - 1]) * inv_denom[k, i]
        x[k, n - 1] = y[k, n - 1]
        for i in range(n - 2, -1, -1):
            x[k, i] = y[k, i] - cprime[k, i] * x[k, i + 1]
    return x
