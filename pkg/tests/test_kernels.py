"""Backend parity: the numba and numpy kernels must agree bitwise-closely,
and the COUETTE_LAB_BACKEND switch must select the requested one."""

import os
import subprocess
import sys

import numpy as np
import pytest

from couette_lab import _wkernels_numpy as knp
from couette_lab.weights import MultiplierParams, build_g_boundary, layout, s_of_beta

knb = pytest.importorskip("couette_lab._wkernels_numba")


def _w_inputs(beta, seed=0, n=4000):
    rng = np.random.default_rng(seed)
    a = 10.0 ** rng.uniform(0.5, 3.0, n)
    t = rng.uniform(0.0, 2.4, n) * a
    kmode = rng.integers(1, 6, n)
    branch = rng.integers(0, 3, n)
    # hit interval breakpoints exactly: t_m = 2a/(2m+1) owns the left edge
    for i in range(0, n, 7):
        m = int(rng.integers(1, 12))
        t[i] = 2.0 * a[i] / (2.0 * m + 1.0)
    t[0] = 0.0
    t[1] = 2.0 * a[1]
    return t, a, kmode.astype(np.int64), branch.astype(np.int64)


@pytest.mark.parametrize("beta", [0.0, 1.0 / 6.0, 0.25])
def test_w_batch_parity(beta):
    t, a, kmode, branch = _w_inputs(beta)
    lw1, rw1 = knp.w_batch(t, a, kmode, branch, beta, 0.5)
    lw2, rw2 = knb.w_batch(t, a, kmode, branch, beta, 0.5)
    assert np.allclose(lw1, lw2, rtol=1e-12, atol=1e-12)
    assert np.allclose(rw1, rw2, rtol=1e-12, atol=1e-12)
    assert np.all(np.isfinite(lw1)) and np.all(np.isfinite(rw1))


@pytest.mark.parametrize("beta", [0.0, 1.0 / 6.0])
def test_g_batch_parity(beta):
    params = MultiplierParams(beta=beta, nu=1e-4)
    etas = [16.0, 100.0, 507.3]
    gbs = [build_g_boundary(e, params) for e in etas]
    gb_flat = np.concatenate(gbs)
    gb_off = np.zeros(len(etas) + 1, dtype=np.int64)
    np.cumsum([len(g) for g in gbs], out=gb_off[1:])
    lays = [layout(e, beta) for e in etas]
    Es_u = np.array([l.E_s for l in lays], dtype=np.int64)
    Ea_u = np.array([l.E_a for l in lays], dtype=np.int64)

    rng = np.random.default_rng(3)
    n = 3000
    aidx = rng.integers(0, len(etas), n)
    a = np.array(etas)[aidx]
    t = rng.uniform(0.0, 2.2, n) * a
    for i in range(0, n, 5):  # exact boundaries
        m = int(rng.integers(0, Ea_u[aidx[i]] + 1))
        t[i] = 2.0 * a[i] / (2.0 * m + 1.0)
    args = (t, a, aidx.astype(np.int64), gb_flat, gb_off, Es_u, Ea_u,
            beta, s_of_beta(beta), params.nu, params.kappa)
    lg1, rg1 = knp.g_batch(*args)
    lg2, rg2 = knb.g_batch(*args)
    assert np.allclose(lg1, lg2, rtol=1e-12, atol=1e-12)
    assert np.allclose(rg1, rg2, rtol=1e-12, atol=1e-12)
    assert np.all(lg1 <= 1e-15)  # g <= 1 everywhere
    assert np.all(rg1 >= 0.0)


def test_m_batch_parity():
    rng = np.random.default_rng(5)
    n = 5000
    t = rng.uniform(0.0, 300.0, n)
    k = rng.integers(-6, 7, n).astype(float)
    eta = rng.uniform(-200.0, 200.0, n)
    lm1, rm1 = knp.m_batch(t, k, eta, 1e-4)
    lm2, rm2 = knb.m_batch(t, k, eta, 1e-4)
    assert np.allclose(lm1, lm2, rtol=1e-13, atol=1e-15)
    assert np.allclose(rm1, rm2, rtol=1e-13, atol=1e-15)
    nz = k != 0
    assert np.all(np.abs(lm1[nz]) <= np.pi / np.abs(k[nz]) + 1e-12)
    assert np.all(lm1[~nz] == 0.0) and np.all(rm1[~nz] == 0.0)


# ---------------------------------------------------------------------------
# environment switch

def _probe_backend(value):
    env = dict(os.environ)
    if value is None:
        env.pop("COUETTE_LAB_BACKEND", None)
    else:
        env["COUETTE_LAB_BACKEND"] = value
    return subprocess.run(
        [sys.executable, "-c",
         "from couette_lab.backend import ACTIVE_BACKEND; print(ACTIVE_BACKEND)"],
        capture_output=True, text=True, env=env,
    )


def test_backend_env_selection():
    r = _probe_backend("numpy")
    assert r.returncode == 0 and r.stdout.strip() == "numpy"
    r = _probe_backend("numba")
    assert r.returncode == 0 and r.stdout.strip() == "numba"
    r = _probe_backend(None)
    assert r.returncode == 0 and r.stdout.strip() in ("numba", "numpy")


def test_backend_env_rejects_unknown():
    r = _probe_backend("fortran")
    assert r.returncode != 0
    assert "COUETTE_LAB_BACKEND" in r.stderr
