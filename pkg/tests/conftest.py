import numpy as np
import pytest

from aximhd.grid import ScalarField


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def smooth_random_field(grid, seed, parity="even", zero_wall=True):
    """A smooth random field: white noise run through a few blur passes."""
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((grid.n_r + 1, grid.n_z))
    for _ in range(6):
        v = 0.25 * (
            np.roll(v, 1, 0) + np.roll(v, -1, 0) + np.roll(v, 1, 1) + np.roll(v, -1, 1)
        )
    if parity == "even":
        v[0] = v[1]
    else:
        v[0] = 0.0
    if zero_wall:
        v[-1] = 0.0
        v[-2] *= 0.5
    return ScalarField(grid, v, parity)
