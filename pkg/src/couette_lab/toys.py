"""Resonance toy models behind the weight constructions.

The strong model is a two-component linear system on the resonant layer
of mode k at frequency eta: the resonant amplitude pumps the
non-resonant one through a Lorentzian coupling of strength kappa * r
(r = |eta|^(1-3b) / |k|^(2-3b)), and is pumped back at the flat rate
kappa / r.  The weak model is the scalar ODE that the g weight solves
exactly.  Both integrators are plain fixed-step RK4 with Richardson
step-halving as the error gate; the coefficients are smooth inside each
integration interval so the order-4 estimate is reliable.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .weights import MultiplierParams, layout, weight_table

__all__ = [
    "ToyTrajectory",
    "integrate_strong",
    "integrate_weak",
    "cascade_amplification",
    "CascadeEstimate",
    "export_trajectory",
]


@dataclass(frozen=True)
class ToyTrajectory:
    times: np.ndarray
    values: np.ndarray
    meta: dict = field(compare=False)

    def __post_init__(self):
        if self.times.ndim != 1 or np.any(np.diff(self.times) <= 0.0):
            raise ValueError("times must be strictly increasing")
        if self.values.shape[0] != self.times.shape[0]:
            raise ValueError("values and times disagree in length")

    @property
    def f_nr(self) -> np.ndarray:
        return self.values[:, 0]

    @property
    def f_r(self) -> np.ndarray:
        return self.values[:, 1]


def _rk4(rhs, t0, t1, y0, n):
    h = (t1 - t0) / n
    t = t0
    y = np.array(y0, dtype=float)
    times = np.empty(n + 1)
    vals = np.empty((n + 1,) + y.shape)
    times[0] = t
    vals[0] = y
    for i in range(n):
        k1 = rhs(t, y)
        k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = rhs(t + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = t0 + (i + 1) * h
        times[i + 1] = t
        vals[i + 1] = y
    return times, vals


def _rk4_refined(rhs, t0, t1, y0, n0, rel_tol=1e-8, max_doublings=8):
    n = n0
    times, vals = _rk4(rhs, t0, t1, y0, n)
    for _ in range(max_doublings):
        times2, vals2 = _rk4(rhs, t0, t1, y0, 2 * n)
        ref = np.max(np.abs(vals2[-1])) or 1.0
        err = np.max(np.abs(vals2[-1] - vals[-1])) / (15.0 * ref)
        times, vals, n = times2, vals2, 2 * n
        if err < rel_tol:
            return times, vals, err
    return times, vals, err


def integrate_strong(k: int, eta: float, params: MultiplierParams, init=(1.0, 0.0)) -> ToyTrajectory:
    """RK4 trajectory of the strong-resonance pair over the resonant layer
    of mode k.  Richardson halving drives the endpoint estimate below
    1e-8 relative."""
    a = abs(float(eta))
    ak = abs(int(k))
    if k * eta <= 0:
        raise ValueError("strong model needs k*eta > 0")
    lay = layout(eta, params.beta)
    if not 1 <= ak <= lay.E_s:
        raise ValueError(f"|k|={ak} outside the strong range [1, {lay.E_s}]")
    t0, t1 = lay.t_minus[ak], lay.t_plus[ak]
    r = lay.ratio[ak]
    ctr = a / ak
    kap = params.kappa

    def rhs(t, y):
        u = t - ctr
        return np.array([
            kap * r / (1.0 + u * u) * y[1],
            kap / r * y[0],
        ])

    length = t1 - t0
    n0 = max(256, int(math.ceil(16.0 * length)))
    times, vals, err = _rk4_refined(rhs, t0, t1, np.array(init, dtype=float), n0)
    return ToyTrajectory(
        times=times, values=vals,
        meta={"k": int(k), "eta": float(eta), "beta": params.beta,
              "kappa": kap, "ratio": r, "init": tuple(init),
              "richardson_rel_err": float(err)},
    )


def _g_rate_at(t, a, ks, lay, params):
    """Growth rate of log g inside the critical interval of mode ks."""
    u = t - a / ks
    if ks <= lay.E_s:
        rho = lay.ratio[ks]
        return params.kappa * rho / (rho * rho + u * u)
    nu23 = params.nu ** (2.0 / 3.0)
    frg = (1.0 + a ** (2.0 * (params.s - 1.0)) / nu23) ** (1.5 * params.beta)
    cut = (1.0 + nu23 * (a / ks) ** 2) ** (-0.75)
    c = params.kappa * frg * cut * params.nu ** params.beta * a / ks ** 2
    return c / (1.0 + u * u)


def _g_rate(t, a, lay, params):
    ks = min(max(math.ceil(a / t - 0.5), 1), lay.E_a)
    return _g_rate_at(t, a, ks, lay, params)


def integrate_weak(eta: float, params: MultiplierParams) -> ToyTrajectory:
    """Integrate the weak-resonance ODE for g over its active window.

    The boundary value 1 is imposed at t = 2|eta| and log g accumulates
    backward interval by interval (RK4 on the smooth rate inside each
    critical interval); the trajectory comes back in ascending time.
    Column 0 carries g, column 1 the rate.
    """
    a = abs(float(eta))
    if a < 1.0:
        raise ValueError("need |eta| >= 1")
    lay = layout(eta, params.beta)
    seg_times = []
    seg_logg = []
    acc = 0.0
    # walk intervals top-down: I_m spans [t_crit[m], t_crit[m-1]]; the
    # rate is pinned to interval m so the shared breakpoint (owned by
    # m-1 under right continuity) cannot leak the neighboring branch
    # into the last stage evaluations
    for m in range(1, lay.E_a + 1):
        t_lo, t_hi = lay.t_crit[m], lay.t_crit[m - 1]
        rate = lambda t, y, m=m: np.array([_g_rate_at(t, a, m, lay, params)])
        n0 = max(64, int(math.ceil(16.0 * (t_hi - t_lo))))
        times, vals, _ = _rk4_refined(rate, t_lo, t_hi, np.array([0.0]), n0)
        # vals[:,0] is the integral of the rate from t_lo; pin the top to acc
        seg = vals[:, 0]
        top = seg[-1]
        logg = acc - (top - seg)
        keep = slice(0, len(times) - 1) if m > 1 else slice(0, len(times))
        seg_times.append(times[keep])
        seg_logg.append(logg[keep])
        acc -= top
    times = np.concatenate(seg_times[::-1])
    logg = np.concatenate(seg_logg[::-1])
    rates = np.array([_g_rate(t, a, lay, params) for t in times])
    vals = np.stack([np.exp(logg), rates], axis=1)
    return ToyTrajectory(
        times=times, values=vals,
        meta={"eta": float(eta), "beta": params.beta, "nu": params.nu,
              "kappa": params.kappa, "kind": "weak"},
    )


@dataclass(frozen=True)
class CascadeEstimate:
    eta: float
    beta: float
    E_s: int
    mu: float
    log_growth: float
    stirling: float

    @property
    def ratio(self) -> float:
        return self.log_growth / self.stirling if self.stirling != 0.0 else math.nan


def cascade_amplification(eta: float, params: MultiplierParams) -> CascadeEstimate:
    """Total non-resonant growth across the strong cascade and its
    Stirling-form approximation (mu/2)|eta|^s - (mu*s/4) log|eta|."""
    a = abs(float(eta))
    lay = layout(eta, params.beta)
    p = 1.0 + 2.0 * params.c1k
    mu = 2.0 * (2.0 - 3.0 * params.beta) * p
    if lay.E_s >= 1:
        log_growth = p * float(np.sum(np.log(lay.ratio[1 : lay.E_s + 1])))
    else:
        log_growth = 0.0
    stirling = 0.5 * mu * a ** params.s - 0.25 * mu * params.s * math.log(a) if a >= 1 else 0.0
    return CascadeEstimate(
        eta=float(eta), beta=params.beta, E_s=lay.E_s, mu=mu,
        log_growth=log_growth, stirling=stirling,
    )


def export_trajectory(traj: ToyTrajectory, path) -> None:
    """CSV dump: t, f_nr, f_r (strong) or t, g, rate (weak)."""
    weak = traj.meta.get("kind") == "weak"
    header = ["t", "g", "rate"] if weak else ["t", "f_nr", "f_r"]
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(header)
        for t, row in zip(traj.times, traj.values):
            wr.writerow([f"{t:.16g}", f"{row[0]:.16g}", f"{row[1]:.16g}"])
