"""Grid container, transforms, norms, projections, serialization."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from couette_lab.grid import (
    Grid,
    SpectralField,
    dyadic_shells,
    from_physical,
    from_physical_1d,
    gevrey_norm,
    l2_norm,
    load_field,
    lp_low,
    lp_project,
    project_modes,
    save_field,
    sobolev_norm,
    to_physical,
    to_physical_1d,
)

from conftest import random_hermitian


# ---------------------------------------------------------------------------
# construction

def test_grid_derived_quantities():
    g = Grid(K_x=4, M_v=8, L_v=2.0)
    assert g.shape == (9, 17)
    assert g.d_eta == 0.5
    assert g.eta_max == 4.0
    assert g.N_z >= 3 * 4 + 1 and g.N_v >= 3 * 8 + 1
    assert np.array_equal(g.k, np.arange(-4, 5))
    assert np.allclose(g.eta, np.arange(-8, 9) / 2.0)


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid(K_x=0, M_v=4, L_v=1.0)
    with pytest.raises(ValueError):
        Grid(K_x=4, M_v=4, L_v=-1.0)
    with pytest.raises(ValueError):
        Grid(K_x=4, M_v=4, L_v=1.0, N_z=12)  # < 3*4+1


def test_ell1_mesh():
    g = Grid(K_x=2, M_v=2, L_v=2.0)
    m = g.ell1_mesh()
    assert m.shape == g.shape
    assert m[0, 0] == 2.0 + 1.0  # k=-2, eta=-1
    assert m[2, 2] == 0.0


# ---------------------------------------------------------------------------
# transforms

def test_single_mode_pointwise():
    # convention: f(z, v) = sum c[k, j] e^{ikz} e^{i eta_j v}
    g = Grid(K_x=3, M_v=5, L_v=2.0)
    c = np.zeros(g.shape, dtype=complex)
    k0, j0 = 2, 3
    c[g.K_x + k0, g.M_v + j0] = 0.5
    c[g.K_x - k0, g.M_v - j0] = 0.5
    u = to_physical(SpectralField(g, c))
    z = g.z_nodes[:, None]
    v = g.v_nodes[None, :]
    expected = np.cos(k0 * z + (j0 / g.L_v) * v)
    assert np.max(np.abs(u - expected)) < 1e-12


def test_round_trip(rng, small_grid):
    f = random_hermitian(small_grid, rng)
    u = to_physical(f)
    assert u.dtype == np.float64
    back = from_physical(u, small_grid)
    assert np.max(np.abs(back.coef - f.coef)) < 1e-13


def test_round_trip_1d(rng, small_grid):
    row = rng.standard_normal(2 * small_grid.M_v + 1) * 1j
    row = row + rng.standard_normal(2 * small_grid.M_v + 1)
    row = 0.5 * (row + np.conj(row[::-1]))
    u = to_physical_1d(row, small_grid)
    assert np.max(np.abs(from_physical_1d(u, small_grid) - row)) < 1e-13


def test_parseval(rng, small_grid):
    # l2_norm^2 = d_eta * sum |c|^2 = d_eta * mean |u|^2 on collocation nodes
    f = random_hermitian(small_grid, rng)
    u = to_physical(f)
    phys = np.sqrt(small_grid.d_eta * np.mean(u * u))
    assert abs(l2_norm(f) - phys) < 1e-12 * max(1.0, phys)


def test_hermitize(rng, small_grid):
    c = rng.standard_normal(small_grid.shape) + 1j * rng.standard_normal(small_grid.shape)
    f = SpectralField(small_grid, c)
    h = f.hermitized()
    assert h.hermitian_defect() < 1e-14
    # idempotent: already-real fields are fixed points
    assert np.max(np.abs(h.hermitized().coef - h.coef)) < 1e-14
    assert f.hermitian_defect() > 0.1  # the input really was generic


def test_nonfinite_rejected(small_grid):
    c = np.zeros(small_grid.shape, dtype=complex)
    c[0, 0] = np.nan
    with pytest.raises(ValueError):
        SpectralField(small_grid, c)


# ---------------------------------------------------------------------------
# norms

def test_norm_special_cases(rng, small_grid):
    f = random_hermitian(small_grid, rng)
    assert abs(gevrey_norm(f, 0.5, 0.0, 0.0) - l2_norm(f)) < 1e-14
    assert abs(sobolev_norm(f, 0.0) - l2_norm(f)) < 1e-14
    assert sobolev_norm(f, 2.0) >= l2_norm(f)


def test_gevrey_norm_monotone_in_lambda(rng, small_grid):
    f = random_hermitian(small_grid, rng)
    vals = [gevrey_norm(f, 0.5, lam, 3.0) for lam in (0.0, 0.4, 0.8)]
    assert vals[0] < vals[1] < vals[2]


def test_gevrey_norm_single_mode():
    g = Grid(K_x=2, M_v=4, L_v=1.0)
    c = np.zeros(g.shape, dtype=complex)
    c[g.K_x + 1, g.M_v + 2] = 2.0
    f = SpectralField(g, c)
    x = 1.0 + 2.0
    expected = 2.0 * np.exp(0.3 * x ** 0.5) * (1.0 + x * x) ** 1.5 * np.sqrt(g.d_eta)
    assert abs(gevrey_norm(f, 0.5, 0.3, 3.0) - expected) < 1e-12 * expected


# ---------------------------------------------------------------------------
# projections

def test_project_modes_partition(rng, small_grid):
    f = random_hermitian(small_grid, rng)
    zero, neq = project_modes(f)
    assert np.max(np.abs(zero.coef + neq.coef - f.coef)) == 0.0
    nz = np.nonzero(np.any(zero.coef != 0.0, axis=1))[0]
    assert np.all(nz == small_grid.K_x)
    assert np.all(neq.coef[small_grid.K_x, :] == 0.0)
    # orthogonality of the split
    assert abs(l2_norm(f) ** 2 - l2_norm(zero) ** 2 - l2_norm(neq) ** 2) < 1e-12


def test_lp_partition(rng, small_grid):
    f = random_hermitian(small_grid, rng)
    shells = dyadic_shells(small_grid)
    assert shells[-1] >= small_grid.eta_max
    assert all(n & (n - 1) == 0 for n in shells)
    total = lp_low(f, 1).coef + sum(lp_project(f, n).coef for n in shells)
    assert np.max(np.abs(total - f.coef)) < 1e-12


def test_lp_validation(rng, small_grid):
    f = random_hermitian(small_grid, rng)
    with pytest.raises(ValueError):
        lp_project(f, 3)
    with pytest.raises(ValueError):
        lp_low(f, 0)


# ---------------------------------------------------------------------------
# serialization

def test_save_load_round_trip(rng, small_grid, tmp_path):
    f = random_hermitian(small_grid, rng)
    path = tmp_path / "field.field"
    save_field(path, f)
    back = load_field(path)
    assert back.grid == small_grid
    assert np.array_equal(back.coef, f.coef)


def test_load_rejects_bad_magic(tmp_path):
    path = tmp_path / "junk.field"
    path.write_bytes(b"NOTMAGIC" + b"\x00" * 64)
    with pytest.raises(ValueError):
        load_field(path)


# ---------------------------------------------------------------------------
# property: transform round trip over random shapes

@settings(max_examples=25, deadline=None)
@given(
    kx=st.integers(min_value=1, max_value=5),
    mv=st.integers(min_value=1, max_value=9),
    lv=st.sampled_from([0.5, 1.0, 2.0]),
    seed=st.integers(min_value=0, max_value=2 ** 31),
)
def test_round_trip_property(kx, mv, lv, seed):
    g = Grid(K_x=kx, M_v=mv, L_v=lv)
    f = random_hermitian(g, np.random.default_rng(seed))
    back = from_physical(to_physical(f), g)
    assert np.max(np.abs(back.coef - f.coef)) < 1e-12
