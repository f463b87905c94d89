"""Shared builders for the test suite."""

import numpy as np
import pytest

from couette_lab.grid import Grid, SpectralField


def random_hermitian(grid: Grid, rng, decay: float = 0.3) -> SpectralField:
    """Random real-field coefficients with exponential tail decay.

    decay multiplies |k| + |eta| in the envelope, so larger values give
    more compactly supported spectra (useful when a test needs content
    to stay away from the grid edge).
    """
    shape = grid.shape
    c = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    c *= np.exp(-decay * grid.ell1_mesh())
    f = SpectralField(grid, c).hermitized()
    # zero total mean so stream-function inversion never sees k = eta = 0
    f.coef[grid.K_x, grid.M_v] = 0.0
    return f


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def small_grid():
    return Grid(K_x=6, M_v=24, L_v=1.0)
