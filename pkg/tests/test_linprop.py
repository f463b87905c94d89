"""Closed-form linear propagator: viscous factor, lattice shift
bookkeeping, the two frame views, and the decay report."""

import json
import math

import numpy as np
import pytest
from scipy.integrate import quad

from couette_lab.grid import Grid, SpectralField, l2_norm
from couette_lab.linprop import (
    damping_array,
    decay_report,
    dx_psi_norm,
    dy_psi_norm,
    exact_evolve,
    omega_neq_norm,
    sheared_evolve,
    stream_function,
    viscous_exponent,
)

from conftest import random_hermitian


def _single_mode(grid, k0, j0, amp=1.0):
    c = np.zeros(grid.shape, dtype=complex)
    c[grid.K_x + k0, grid.M_v + j0] = amp
    c[grid.K_x - k0, grid.M_v - j0] = np.conj(amp)
    return SpectralField(grid, c)


# ---------------------------------------------------------------------------
# viscous exponent

def test_viscous_exponent_against_quadrature(rng):
    for _ in range(200):
        k = int(rng.integers(-5, 6))
        eta = float(rng.uniform(-40.0, 40.0))
        t0 = float(rng.uniform(0.0, 10.0))
        t1 = t0 + float(rng.uniform(0.0, 10.0))
        ref, _ = quad(lambda s: k * k + (eta - k * s) ** 2, t0, t1)
        got = float(viscous_exponent(k, eta, t0, t1))
        assert abs(got - ref) < 1e-10 * max(1.0, abs(ref)), (k, eta, t0, t1)


def test_viscous_exponent_broadcast(small_grid):
    out = viscous_exponent(small_grid.k_mesh(), small_grid.eta_mesh(), 0.0, 2.0)
    assert out.shape == small_grid.shape
    assert np.all(out >= 0.0)
    ij = small_grid.M_v + 4
    expected = float(viscous_exponent(0, small_grid.eta[ij], 0.0, 2.0))
    assert out[small_grid.K_x, ij] == pytest.approx(expected)


def test_damping_array_bounds(small_grid):
    d = damping_array(small_grid, 0.0, 3.0, 1e-3)
    assert np.all(d <= 1.0) and np.all(d > 0.0)
    assert np.array_equal(damping_array(small_grid, 0.0, 3.0, 0.0),
                          np.ones(small_grid.shape))


# ---------------------------------------------------------------------------
# exact lattice evolution

def test_shift_direction():
    g = Grid(K_x=2, M_v=10, L_v=1.0)
    f = _single_mode(g, 1, 5)
    out, lost = exact_evolve(f, 3.0, 0.0)
    assert lost == 0
    # content initially at eta = 5 on row k = 1 sits at eta = 5 - k*t = 2
    assert out.coef[g.K_x + 1, g.M_v + 2] == 1.0
    assert np.count_nonzero(out.coef) == 2


def test_isometry_inviscid(rng):
    g = Grid(K_x=3, M_v=40, L_v=1.0)
    f = random_hermitian(g, rng, decay=0.8)
    # keep support well inside so a t = 4 shift stays on the grid
    mask = np.abs(g.eta)[None, :] <= 20.0
    f = SpectralField(g, f.coef * mask)
    out, lost = exact_evolve(f, 4.0, 0.0)
    assert lost == 0
    assert abs(l2_norm(out) - l2_norm(f)) < 1e-13 * l2_norm(f)


def test_loss_accounting():
    g = Grid(K_x=2, M_v=6, L_v=1.0)
    f = _single_mode(g, 1, -4)
    out, lost = exact_evolve(f, 5.0, 0.0)
    # eta = -4 shifts to -9, off a grid with |eta| <= 6; mirror goes to +9
    assert lost == 2
    assert np.count_nonzero(out.coef) == 0


def test_off_lattice_rows_are_counted():
    g = Grid(K_x=2, M_v=10, L_v=1.0)
    f = _single_mode(g, 1, 2)
    out, lost = exact_evolve(f, 0.5, 0.0)  # k*t*L_v = 0.5, not an integer
    assert lost == 2
    assert np.count_nonzero(out.coef) == 0
    # k = 0 rows always represent (zero shift)
    f0 = SpectralField(g, np.zeros(g.shape, dtype=complex))
    f0.coef[g.K_x, g.M_v + 3] = 1.0
    f0.coef[g.K_x, g.M_v - 3] = 1.0
    out0, lost0 = exact_evolve(f0, 0.5, 0.0)
    assert lost0 == 0 and np.count_nonzero(out0.coef) == 2


def test_semigroup_property(rng):
    g = Grid(K_x=3, M_v=40, L_v=1.0)
    f = random_hermitian(g, rng, decay=0.8)
    mask = np.abs(g.eta)[None, :] <= 15.0
    f = SpectralField(g, f.coef * mask)
    nu = 1e-3
    one, lost1 = exact_evolve(f, 2.0, nu)
    two, lost2 = exact_evolve(one, 3.0, nu)
    direct, lost3 = exact_evolve(f, 5.0, nu)
    assert lost1 == lost2 == lost3 == 0
    assert np.max(np.abs(two.coef - direct.coef)) < 1e-13


def test_single_mode_heat_law():
    # k = 1, eta = 0: damping exponent is exactly nu*(t + t^3/3)
    g = Grid(K_x=2, M_v=12, L_v=1.0)
    f = _single_mode(g, 1, 0)
    nu, t = 3e-3, 3.0
    out, lost = exact_evolve(f, t, nu)
    assert lost == 0
    amp = np.abs(out.coef[g.K_x + 1, g.M_v - 3])
    assert amp == pytest.approx(math.exp(-nu * (t + t ** 3 / 3.0)), rel=1e-13)


def test_frames_agree_on_norms(rng):
    g = Grid(K_x=3, M_v=40, L_v=1.0)
    f = random_hermitian(g, rng, decay=0.8)
    mask = np.abs(g.eta)[None, :] <= 15.0
    f = SpectralField(g, f.coef * mask)
    nu, t = 1e-3, 5.0
    lab, lost = exact_evolve(f, t, nu)
    assert lost == 0
    sheared = sheared_evolve(f, t, nu)
    assert abs(l2_norm(lab) - l2_norm(sheared)) < 1e-13 * l2_norm(f)


def test_evolve_rejects_negative_time(small_grid, rng):
    f = random_hermitian(small_grid, rng)
    with pytest.raises(ValueError):
        exact_evolve(f, -1.0, 0.0)
    with pytest.raises(ValueError):
        sheared_evolve(f, 1.0, -1e-4)


# ---------------------------------------------------------------------------
# stream function and velocity norms

def test_stream_function_single_mode():
    g = Grid(K_x=2, M_v=10, L_v=1.0)
    f = _single_mode(g, 1, 4)
    t = 2.0
    psi = stream_function(f, t)
    sym = 1.0 + (4.0 - t) ** 2
    assert psi.coef[g.K_x + 1, g.M_v + 4] == pytest.approx(-1.0 / sym)
    # gauge: the mean mode never blows up
    f0 = SpectralField(g, np.zeros(g.shape, dtype=complex))
    f0.coef[g.K_x, g.M_v] = 1.0
    assert stream_function(f0, 0.0).coef[g.K_x, g.M_v] == 0.0


def test_velocity_norms_single_mode():
    g = Grid(K_x=2, M_v=10, L_v=1.0)
    f = _single_mode(g, 1, 4)
    t = 1.5
    sym = 1.0 + (4.0 - t) ** 2
    base = math.sqrt(g.d_eta * 2.0)  # two Hermitian partners
    assert dx_psi_norm(f, t) == pytest.approx(base / sym)
    assert dy_psi_norm(f, t) == pytest.approx(base * abs(4.0 - t) / sym ** 2 * sym)
    assert omega_neq_norm(f) == pytest.approx(base)


def test_neq_norms_ignore_zero_row(small_grid):
    c = np.zeros(small_grid.shape, dtype=complex)
    c[small_grid.K_x, :] = 1.0
    f = SpectralField(small_grid, c)
    assert omega_neq_norm(f) == 0.0
    assert dx_psi_norm(f, 1.0) == 0.0


# ---------------------------------------------------------------------------
# decay report

def test_decay_report(tmp_path, rng):
    g = Grid(K_x=4, M_v=48, L_v=1.0)
    f = random_hermitian(g, rng, decay=0.5)
    times = np.linspace(1.0, 40.0, 40)
    csv_path = tmp_path / "decay.csv"
    json_path = tmp_path / "decay.json"
    report = decay_report(f, 1e-4, times, csv_path, json_path,
                          fit_window=(10.0, 40.0))
    text = csv_path.read_text().splitlines()
    assert text[0].split(",")[0] == "t"
    assert len(text) == 1 + len(times)
    blob = json.loads(json_path.read_text())
    assert "fits" in blob and "dy_psi_neq" in blob["fits"]
    # inviscid-damping ordering: the x-derivative norm decays faster
    table = np.array([[float(x) for x in line.split(",")] for line in text[1:]])
    assert table[-1, 2] < table[-1, 1]
    assert report["fits"]["dy_psi_neq"]["power"]["p"] > 0.0
    assert report["fits"]["omega_neq"]["exp_cubic"]["c"] > 0.0
