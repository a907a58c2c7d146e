"""Parity-aware derivative stencils on axisymmetric fields.

Radial derivatives close at the axis using the even/odd tag of the
field (no ghost cells) and use second-order one-sided formulas at the
outer wall.  The z direction is periodic throughout.
"""

import numpy as np

from . import _kernels
from .grid import ScalarField

_FLIP = {"even": "odd", "odd": "even"}


def ddr_values(values, parity, h_r):
    """Centered d/dr on a raw sample array (axis row from parity)."""
    out = np.empty_like(values)
    out[1:-1] = (values[2:] - values[:-2]) / (2.0 * h_r)
    if parity == "even":
        out[0] = 0.0
    else:
        # odd mirror: f[-1] = -f[1]
        out[0] = values[1] / h_r
    out[-1] = (3.0 * values[-1] - 4.0 * values[-2] + values[-3]) / (2.0 * h_r)
    return out


def ddz_values(values, h_z):
    return (np.roll(values, -1, axis=1) - np.roll(values, 1, axis=1)) / (2.0 * h_z)


def d2dr2_values(values, parity, h_r):
    """Centered d2/dr2; axis row 2(f1-f0)/h^2 for even, f=0 row for odd."""
    out = np.empty_like(values)
    h2 = h_r * h_r
    out[1:-1] = (values[2:] - 2.0 * values[1:-1] + values[:-2]) / h2
    if parity == "even":
        out[0] = 2.0 * (values[1] - values[0]) / h2
    else:
        out[0] = 0.0  # odd: f(0)=0 and f''(0)=0
    out[-1] = (
        2.0 * values[-1] - 5.0 * values[-2] + 4.0 * values[-3] - values[-4]
    ) / h2
    return out


def d2dz2_values(values, h_z):
    return (
        np.roll(values, -1, axis=1) - 2.0 * values + np.roll(values, 1, axis=1)
    ) / (h_z * h_z)


def over_r_values(values, parity, grid):
    """f/r with the parity limit f/r -> d_r f at the axis (odd f only)."""
    if parity != "odd":
        raise ValueError("f/r requires an odd-parity field")
    out = np.empty_like(values)
    out[1:] = values[1:] / grid.r[1:, None]
    out[0] = values[1] / grid.h_r  # L'Hopital via the odd mirror
    return out


def ddr(f):
    return ScalarField(f.grid, ddr_values(f.values, f.parity, f.grid.h_r), _FLIP[f.parity])


def ddz(f):
    return ScalarField(f.grid, ddz_values(f.values, f.grid.h_z), f.parity)


def d2dr2(f):
    return ScalarField(f.grid, d2dr2_values(f.values, f.parity, f.grid.h_r), f.parity)


def d2dz2(f):
    return ScalarField(f.grid, d2dz2_values(f.values, f.grid.h_z), f.parity)


def over_r(f):
    return ScalarField(f.grid, over_r_values(f.values, f.parity, f.grid), "even")


def laplace5d_values(values, grid):
    cp, cm = grid.lap_coeffs
    return _kernels.laplace5d(values, cp, cm, grid.h_r, grid.h_z, grid.r_max)


def laplace5d_apply(f):
    """Apply d_rr + (3/r) d_r + d_zz; even-parity fields only.

    The axis row uses the parity limit (3/r) d_r -> 3 d_rr, i.e. the row
    is 4 d_rr + d_zz; the wall row is one-sided.  Quadratics in r and
    (away from the periodic seam) in z are differentiated exactly.
    """
    if f.parity != "even":
        raise ValueError("laplace5d_apply requires an even-parity field")
    return ScalarField(f.grid, laplace5d_values(f.values, f.grid), "even")


def grad_sq_values(values, parity, grid):
    """|grad f|^2 = (d_r f)^2 + (d_z f)^2 as a raw array."""
    dr = ddr_values(values, parity, grid.h_r)
    dz = ddz_values(values, grid.h_z)
    return dr * dr + dz * dz
