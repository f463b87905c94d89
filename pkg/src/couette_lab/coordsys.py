"""Reconstruction of the nonlinear coordinate change from run output.

The solver works in the sheared frame; the analysis coordinates ride on
the evolving background shear instead.  Their generator is the
zero-in-x velocity u0(t, y), recorded by the solver as spectral rows:
t (v(t,y) - y) solves the forced heat equation

    (d_t - nu d_yy) [t (v - y)] = u0,    t (v - y) -> 0 as t -> 0,

so v is recovered by a Duhamel quadrature with exact heat factors.  The
remaining coordinate functions (v', v'', h, q, h-bar) follow by
spectral differentiation and pointwise algebra in the y
representation; the accompanying weighted energies use the transverse
(k = 0) rows of the norm multipliers.

Convention: d_v is realized as (1/v') d_y, which makes the chain-rule
identity v' d_v v' = v'' hold to rounding error; the identification of
y samples with v samples is the small-coordinate approximation whose
size is reported through sup |h|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import Grid, from_physical_1d, to_physical_1d
from .weights import MultiplierEvaluator, lambda_of_t

__all__ = [
    "CoordState",
    "solve_v",
    "heat_residual_fd",
    "derived_fields",
    "dtv_identity_residuals",
    "coord_energy",
    "export_coord_csv",
]


def _check_uniform(times: np.ndarray) -> float:
    times = np.asarray(times, dtype=float)
    if times.size < 2:
        raise ValueError("need at least two time samples")
    dt = np.diff(times)
    if np.max(np.abs(dt - dt[0])) > 1e-9 * max(1.0, abs(dt[0])):
        raise ValueError("time grid must be uniform")
    return float(dt[0])


def solve_v(times: np.ndarray, u10_rows: np.ndarray, eta: np.ndarray, nu: float) -> np.ndarray:
    """Spectral rows of t (v - y) on the sample times.

    Trapezoid quadrature between consecutive samples with the exact
    heat factor exp(-nu eta^2 dt) pulled inside, accumulated by the
    one-step recurrence; exact whenever the damped integrand is linear
    between samples.  Row 0 is zero (the t -> 0 limit).
    """
    u10_rows = np.asarray(u10_rows)
    if u10_rows.size == 0:
        raise ValueError("empty series")
    dt = _check_uniform(times)
    if abs(float(times[0])) > 1e-12:
        raise ValueError("series must start at t = 0")
    decay = np.exp(-nu * np.asarray(eta, dtype=float) ** 2 * dt)
    phi = np.zeros_like(u10_rows, dtype=np.complex128)
    for n in range(1, len(times)):
        phi[n] = decay * phi[n - 1] + 0.5 * dt * (
            decay * u10_rows[n - 1] + u10_rows[n]
        )
    return phi


def heat_residual_fd(times, phi_rows, u10_rows, eta, nu) -> np.ndarray:
    """Relative residual of the forced heat equation at interior times.

    d_t is a five-point centered difference, d_yy is spectral; the
    result measures how well the stored rows solve the equation
    independently of how they were produced.  Scale is the largest
    forcing amplitude.
    """
    dt = _check_uniform(times)
    phi = np.asarray(phi_rows)
    u = np.asarray(u10_rows)
    if len(times) < 5:
        raise ValueError("need at least five samples for the stencil")
    scale = float(np.max(np.abs(u)))
    if scale == 0.0:
        scale = 1.0
    eta2 = np.asarray(eta, dtype=float) ** 2
    out = np.empty(len(times) - 4)
    for i, n in enumerate(range(2, len(times) - 2)):
        dphi = (phi[n - 2] - 8 * phi[n - 1] + 8 * phi[n + 1] - phi[n + 2]) / (12 * dt)
        res = dphi + nu * eta2 * phi[n] - u[n]
        out[i] = float(np.max(np.abs(res))) / scale
    return out


@dataclass(frozen=True)
class CoordState:
    """Coordinate functions at one instant, spectral in the transverse
    variable, plus self-consistency numbers.

    q is defined for t >= 1 only (NaN below); diffeo_ok records v' > 0
    at the collocation nodes; chain_residual is the sup defect of
    v' d_v v' = v''; h_sup is sup |v' - 1|."""

    t: float
    v_minus_y: np.ndarray
    h: np.ndarray
    v_pp: np.ndarray
    q: np.ndarray
    h_bar: np.ndarray
    diffeo_ok: bool
    chain_residual: float
    h_sup: float


def derived_fields(
    v_minus_y: np.ndarray,
    f0_row: np.ndarray,
    u10_row: np.ndarray,
    t: float,
    nu: float,
    grid: Grid,
) -> CoordState:
    """All coordinate functions at time t from the three spectral rows.

    h = d_y (v - y); v'' = d_yy (v - y); h-bar = -(f0 + h)/t;
    q = (u0 - (v - y))/t for t >= 1.  The diffeomorphism flag and the
    chain-rule defect are evaluated at the collocation nodes.
    """
    if t <= 0.0:
        raise ValueError("need t > 0")
    eta = grid.eta
    vmy = np.asarray(v_minus_y, dtype=np.complex128)
    h_hat = 1j * eta * vmy
    vpp_hat = -(eta ** 2) * vmy
    h_bar_hat = (-np.asarray(f0_row) - h_hat) / t
    if t >= 1.0:
        q_hat = (np.asarray(u10_row) - vmy) / t
    else:
        q_hat = np.full_like(vmy, np.nan)

    h_phys = to_physical_1d(h_hat, grid).real
    vp_phys = 1.0 + h_phys
    diffeo_ok = bool(np.min(vp_phys) > 0.0)
    # v' d_v v' with d_v = (1/v') d_y collapses to d_y v'; the defect is
    # pure rounding and guards the convention wiring
    dv_vp = to_physical_1d(1j * eta * from_physical_1d(vp_phys, grid), grid).real
    chain = vp_phys * (dv_vp / np.where(vp_phys == 0.0, 1.0, vp_phys))
    vpp_phys = to_physical_1d(vpp_hat, grid).real
    chain_residual = float(np.max(np.abs(chain - vpp_phys)))
    return CoordState(
        t=float(t),
        v_minus_y=vmy,
        h=h_hat,
        v_pp=vpp_hat,
        q=q_hat,
        h_bar=h_bar_hat,
        diffeo_ok=diffeo_ok,
        chain_residual=chain_residual,
        h_sup=float(np.max(np.abs(h_phys))),
    )


def _row_l2(row: np.ndarray, d_eta: float) -> float:
    return math.sqrt(d_eta * float(np.sum(np.abs(row) ** 2)))


def dtv_identity_residuals(
    times: np.ndarray,
    v_minus_y_rows: np.ndarray,
    f0_rows: np.ndarray,
    u10_rows: np.ndarray,
    nu: float,
    grid: Grid,
) -> dict:
    """L2 residual of [d_t v] = q + nu v'' at interior sample times.

    d_t v comes from a centered difference of the v - y rows; q and v''
    from derived_fields.  Only times with t >= 1 qualify (q is not
    defined earlier).  Returns arrays of times and residual norms.
    """
    dt = _check_uniform(times)
    ts, res = [], []
    for n in range(1, len(times) - 1):
        t = float(times[n])
        if t < 1.0:
            continue
        st = derived_fields(v_minus_y_rows[n], f0_rows[n], u10_rows[n], t, nu, grid)
        dtv = (v_minus_y_rows[n + 1] - v_minus_y_rows[n - 1]) / (2.0 * dt)
        r = dtv - st.q - nu * st.v_pp
        ts.append(t)
        res.append(_row_l2(r, grid.d_eta))
    return {"t": np.array(ts), "residual_l2": np.array(res)}


def coord_energy(state: CoordState, evaluator: MultiplierEvaluator, eps: float) -> dict:
    """The four weighted coordinate energies at one instant.

    Components: nu^beta t^3 on q and h-bar under the transverse main
    multiplier divided by <eta>^s, t^4 on q under the transverse
    lower-order multiplier, and eps nu^beta on h under the resonant
    multiplier.  All are quadratic forms, hence nonnegative.
    """
    p = evaluator.params
    t = state.t
    if t < 1.0:
        raise ValueError("coordinate energies need t >= 1")
    g = evaluator.grid
    eta = g.eta
    d_eta = g.d_eta
    a0 = evaluator.A_zero_row(t)
    a0_s = a0 / (1.0 + eta ** 2) ** (0.5 * p.s)
    lam = lambda_of_t(t, p)
    a_gam0 = np.exp(lam * np.abs(eta) ** p.s) * (1.0 + eta ** 2) ** (0.5 * p.gamma)
    a_r = evaluator.A_R_row(t)
    nub = p.nu ** p.beta
    return {
        "E_q_main": nub * t ** 3 * d_eta * float(np.sum(np.abs(a0_s * state.q) ** 2)),
        "E_q_low": t ** 4 * d_eta * float(np.sum(np.abs(a_gam0 * state.q) ** 2)),
        "E_hbar_main": nub * t ** 3 * d_eta * float(np.sum(np.abs(a0_s * state.h_bar) ** 2)),
        "E_h_res": eps * nub * d_eta * float(np.sum(np.abs(a_r * state.h) ** 2)),
    }


def export_coord_csv(path, times, states, residuals, energies) -> None:
    """One row per analyzed time: identity defects and energies."""
    keys = ("E_q_main", "E_q_low", "E_hbar_main", "E_h_res")
    res_map = dict(zip(residuals["t"].tolist(), residuals["residual_l2"].tolist()))
    with open(path, "w") as fh:
        fh.write("t,h_sup,chain_residual,dtv_residual_l2," + ",".join(keys) + "\n")
        for t, st, en in zip(times, states, energies):
            r = res_map.get(float(t), math.nan)
            row = [f"{t:.16g}", f"{st.h_sup:.16g}", f"{st.chain_residual:.16g}",
                   f"{r:.16g}"] + [f"{en[k]:.16g}" for k in keys]
            fh.write(",".join(row) + "\n")
