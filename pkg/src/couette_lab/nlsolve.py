"""Pseudospectral solver for the nonlinear vorticity equation in the
sheared frame.

The unknown is the sheared-frame vorticity; the Couette transport is
absorbed into the frame so the equation reads

    d f/dt + J(phi, f) = nu * Lap_L f,    Lap_L phi = f,

with the plain Jacobian J(phi, f) = dz(phi) dv(f) - dv(phi) dz(f)
(frame shift terms cancel inside the Jacobian) and the time-dependent
Laplacian symbol -(k^2 + (eta - k t)^2).  The stiff viscous part is
removed exactly by the closed-form integrating factor from linprop;
the transport part advances with a third-order strong-stability
Runge-Kutta scheme whose abscissas never decrease, so every integrating
factor is a decaying exponential.  The nonlinear term is evaluated on a
collocation grid large enough that quadratic aliasing falls entirely
outside the retained modes (the 2/3 rule is implied by N >= 3K+1).
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .grid import (
    Grid,
    SpectralField,
    from_physical,
    gevrey_norm,
    l2_norm,
    load_field,
    save_field,
    to_physical,
)
from .linprop import damping_array
from .weights import MultiplierEvaluator, MultiplierParams, s_of_beta

__all__ = [
    "SimConfig",
    "SimState",
    "CFLViolation",
    "RunResult",
    "init_data",
    "nonlinear_rhs",
    "step",
    "energy_monitor",
    "run",
    "config_hash",
    "write_checkpoint",
    "read_checkpoint",
    "DIAG_COLUMNS",
]

DIAG_COLUMNS = (
    "t", "l2", "l2_neq", "E_A", "E_gamma_neq",
    "CK_lambda", "CK_W", "CK_G", "diss",
)


class CFLViolation(RuntimeError):
    """Raised when a step exceeds the advective CFL bound."""

    def __init__(self, dt: float, suggested: float):
        super().__init__(
            f"dt={dt:.4g} exceeds the CFL bound; suggested dt <= {suggested:.4g}"
        )
        self.dt = dt
        self.suggested_dt = suggested


@dataclass(frozen=True)
class SimConfig:
    """Everything a run needs; JSON-serializable and hashable by content.

    The initial amplitude is eps * nu^beta in the Gevrey-(s, lam0,
    sigma) norm; cadence counts steps between diagnostic records.
    """

    K_x: int
    M_v: int
    L_v: float
    nu: float
    beta: float
    eps: float
    t_end: float
    dt: float
    seed: int = 0
    cfl_safety: float = 0.4
    cadence: int = 10
    checkpoint_every: int = 0
    nonlinear: bool = True
    monitor: bool = True
    neq_fraction: float = 0.1
    seed_eta: float = 0.0
    sigma: int = 11
    gamma: int = 7
    lam0: float = 1.0
    lam1: float = 0.4
    abort_factor: float = 1e6

    def __post_init__(self):
        if self.eps <= 0.0:
            raise ValueError("eps must be positive")
        if self.nu < 0.0 or (self.nu == 0.0 and self.beta > 0.0):
            raise ValueError("need nu > 0, or nu = 0 with beta = 0")
        if self.dt <= 0.0 or self.t_end < 0.0:
            raise ValueError("need dt > 0 and t_end >= 0")
        if self.cadence < 1:
            raise ValueError("cadence must be >= 1")
        if not 0.0 < self.cfl_safety <= 1.0:
            raise ValueError("cfl_safety must lie in (0, 1]")
        if not 0.0 < self.neq_fraction <= 1.0:
            raise ValueError("neq_fraction must lie in (0, 1]")
        if self.seed_eta < 0.0:
            raise ValueError("seed_eta must be >= 0")

    @property
    def amplitude(self) -> float:
        return self.eps * self.nu ** self.beta

    def make_grid(self) -> Grid:
        return Grid(K_x=self.K_x, M_v=self.M_v, L_v=self.L_v)

    def make_params(self) -> MultiplierParams:
        return MultiplierParams(
            beta=self.beta, nu=self.nu, sigma=self.sigma, gamma=self.gamma,
            lam0=self.lam0, lam1=self.lam1,
        )

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "SimConfig":
        data = json.loads(text) if isinstance(text, str) else dict(text)
        return cls(**data)


def config_hash(config: SimConfig) -> str:
    return hashlib.sha256(config.to_json().encode()).hexdigest()


@dataclass
class SimState:
    field: SpectralField
    t: float
    step_index: int


def init_data(config: SimConfig) -> SpectralField:
    """Random-phase Gevrey data with the exact prescribed amplitude.

    Magnitudes follow exp(-lam0 |k,eta|^s) <k,eta>^(-sigma-1); phases
    are uniform and Hermitian-paired so the upper half-lattice keeps
    the profile exactly; the mean mode is zero.  The zero x-mode and
    the nonzero modes are rescaled separately: the nonzero part gets
    neq_fraction of the total Gevrey norm eps * nu^beta and the zero
    mode the Pythagorean complement, so the shear reservoir dominates
    by default and transient transfer into the nonzero modes is
    visible against it.

    With seed_eta > 0 the data is instead the onset experiment: a
    zero-mode vorticity band at frequency 2 (a sinusoidal shear
    perturbation; once its amplitude overturns the background gradient
    the band is unstable to the gravest x-modes) plus, on the k = +-1
    rows, a wave packet Gaussian in frequency around eta = +-seed_eta
    and a catalyst at eta = 0 acting as the nonzero seed.  Everything
    is normalized in plain L2 (seed to neq_fraction * amplitude split
    evenly between the two pulses, band to the complement), so eps
    directly sets the physical band amplitude and the transient
    amplification of the nonzero modes switches on at eps of order
    one.
    """
    g = config.make_grid()
    s = s_of_beta(config.beta)
    x = g.ell1_mesh()
    mag = np.exp(-config.lam0 * x ** s) * (1.0 + x ** 2) ** (-0.5 * (config.sigma + 1.0))
    rng = np.random.default_rng(config.seed)
    theta = rng.uniform(0.0, 2.0 * np.pi, g.shape)
    c = mag * np.exp(1j * theta)
    nk, nj = g.shape
    ik0, jc = nk // 2, nj // 2
    ii = np.arange(nk)[:, None]
    jj = np.arange(nj)[None, :]
    upper = (ii > ik0) | ((ii == ik0) & (jj > jc))
    c = np.where(upper, c, np.conj(c[::-1, ::-1]))
    c[ik0, jc] = 0.0
    zero_row = np.zeros_like(c)
    zero_row[ik0, :] = c[ik0, :]
    frac = config.neq_fraction
    amp = config.amplitude
    if config.seed_eta > 0.0:
        if config.seed_eta >= g.eta_max:
            raise ValueError("seed_eta must fit inside the frequency grid")
        eta = g.eta_mesh()[0]
        packet = np.exp(-0.5 * (eta - config.seed_eta) ** 2).astype(np.complex128)
        packet *= np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, nj))
        catalyst = np.zeros(nj, dtype=np.complex128)
        catalyst[jc] = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        row = np.zeros(nj, dtype=np.complex128)
        for pulse in (packet, catalyst):
            pnorm = l2_norm(SpectralField(g, _k1_row(g, pulse)))
            row += pulse * (frac * amp / (math.sqrt(2.0) * pnorm))
        out = _k1_row(g, row)
        j_band = jc + int(round(2.0 * config.L_v))
        if j_band >= nj:
            raise ValueError("frequency grid too small for the eta = 2 band")
        band = np.zeros_like(c)
        band[ik0, j_band] = 1.0
        band[ik0, nj - 1 - j_band] = 1.0
        norm_band = l2_norm(SpectralField(g, band))
        out = out + band * (math.sqrt(1.0 - frac * frac) * amp / norm_band)
        return SpectralField(g, out)
    neq = c - zero_row
    norm_neq = gevrey_norm(SpectralField(g, neq), s, config.lam0, config.sigma)
    out = neq * (frac * amp / norm_neq)
    if frac < 1.0:
        norm_zero = gevrey_norm(SpectralField(g, zero_row), s, config.lam0,
                                config.sigma)
        out = out + zero_row * (math.sqrt(1.0 - frac * frac) * amp / norm_zero)
    return SpectralField(g, out)


def _k1_row(grid: Grid, row: np.ndarray) -> np.ndarray:
    """Hermitian field holding `row` on k = +1 and its mirror on k = -1."""
    nk, nj = grid.shape
    ik0 = nk // 2
    c = np.zeros((nk, nj), dtype=np.complex128)
    c[ik0 + 1, :] = row
    c[ik0 - 1, :] = np.conj(row[::-1])
    return c


def _grad_coef(grid: Grid, coef: np.ndarray):
    ik = 1j * grid.k_mesh()
    ie = 1j * grid.eta_mesh()
    return ik * coef, ie * coef


def nonlinear_rhs(field: SpectralField, t: float):
    """Minus the Jacobian J(phi, f), dealiased by construction, plus the
    collocation maximum of the two transport velocity components."""
    g = field.grid
    k = g.k_mesh()
    sym = k ** 2 + (g.eta_mesh() - k * t) ** 2
    phi = np.zeros(g.shape, dtype=np.complex128)
    np.divide(field.coef, sym, where=sym > 0.0, out=phi)
    phi = -phi
    phi_z, phi_v = _grad_coef(g, phi)
    f_z, f_v = _grad_coef(g, field.coef)
    uz = to_physical(SpectralField(g, -phi_v))
    uv = to_physical(SpectralField(g, phi_z))
    jac = uz * to_physical(SpectralField(g, f_z)) + uv * to_physical(SpectralField(g, f_v))
    vmax = max(float(np.max(np.abs(uz))), float(np.max(np.abs(uv))))
    return from_physical(-jac, g), vmax


def step(state: SimState, dt: float, config: SimConfig) -> SimState:
    """One integrating-factor SSP-RK3 step.

    Abscissas (0, 2/3, 2/3) and weights (1/4, 3/8, 3/8): third order,
    stages never look backward in time, so both integrating factors are
    pure decay.  With the nonlinearity off the update is the exact
    propagator.
    """
    g = state.field.grid
    u = state.field.coef
    t0 = state.t
    nu = config.nu
    if config.nonlinear:
        n1, vmax = nonlinear_rhs(state.field, t0)
        if vmax > 0.0:
            dz = 2.0 * np.pi / g.N_z
            dv = 2.0 * np.pi * g.L_v / g.N_v
            bound = config.cfl_safety * min(dz, dv) / vmax
            if dt > bound:
                raise CFLViolation(dt, bound)
        k1 = n1.coef
        e_a = damping_array(g, t0, t0 + 2.0 * dt / 3.0, nu)
        e_b = damping_array(g, t0 + 2.0 * dt / 3.0, t0 + dt, nu)
        y2 = e_a * (u + (2.0 * dt / 3.0) * k1)
        k2 = nonlinear_rhs(SpectralField(g, y2), t0 + 2.0 * dt / 3.0)[0].coef
        y3 = e_a * u + (2.0 * dt / 3.0) * k2
        k3 = nonlinear_rhs(SpectralField(g, y3), t0 + 2.0 * dt / 3.0)[0].coef
        new = e_b * (e_a * (u + (dt / 4.0) * k1) + (3.0 * dt / 8.0) * (k2 + k3))
    else:
        new = damping_array(g, t0, t0 + dt, nu) * u
    return SimState(
        field=SpectralField(g, new), t=t0 + dt, step_index=state.step_index + 1
    )


def energy_monitor(field: SpectralField, t: float, evaluator: MultiplierEvaluator) -> dict:
    """Weighted-energy diagnostics at one instant.

    Every term is a d_eta-weighted sum of |multiplier * f-hat|^2: the
    main and lower-order energies, the three Cauchy-Kovalevskaya terms
    (each nonnegative by the sign of the corresponding rate), and the
    viscous dissipation with the sheared Laplacian symbol.
    """
    g = field.grid
    mult = evaluator.multipliers(t)
    absf2 = np.abs(field.coef) ** 2
    a2f2 = np.exp(2.0 * mult["log_A"]) * absf2
    neq = (g.k != 0)[:, None]
    de = g.d_eta
    return {
        "E_A": de * float(np.sum(a2f2)),
        "E_gamma_neq": de * float(np.sum(mult["A_gamma"] ** 2 * absf2 * neq)),
        "CK_lambda": de * float(abs(mult["lam_dot"]) * np.sum(mult["xs"] * a2f2)),
        "CK_W": de * float(np.sum(mult["rate_w"] * a2f2)),
        "CK_G": de * float(np.sum(mult["rate_g"] * a2f2)),
        "diss": de * float(evaluator.params.nu * np.sum(mult["symbol"] * a2f2)),
    }


@dataclass
class RunResult:
    config: SimConfig
    times: np.ndarray
    series: dict
    u10_rows: np.ndarray
    f0_rows: np.ndarray
    final: SpectralField
    aborted: bool = False
    abort_reason: str = None
    checkpoints: list = field(default_factory=list)

    @property
    def amplification(self) -> float:
        """Peak transient growth of the nonzero-mode L2 norm."""
        s = self.series["l2_neq"]
        return float(np.max(s) / s[0]) if s[0] > 0.0 else math.inf


def _u10_row(field: SpectralField, t: float) -> np.ndarray:
    """Zero-mode of the horizontal velocity, spectral in eta.

    u = -d_y psi; at k = 0 the sheared inversion gives psi-hat =
    -f0-hat / eta^2, so u10-hat = i f0-hat / eta (zero at eta = 0).
    """
    g = field.grid
    row = field.coef[g.shape[0] // 2]
    eta = g.eta
    out = np.zeros_like(row)
    nzero = eta != 0.0
    out[nzero] = 1j * row[nzero] / eta[nzero]
    return out


def write_checkpoint(path, state: SimState, config: SimConfig) -> None:
    save_field(path, state.field)
    meta = {"t": state.t, "step_index": state.step_index,
            "config_sha256": config_hash(config)}
    with open(str(path) + ".meta.json", "w") as fh:
        json.dump(meta, fh, indent=2)


def read_checkpoint(path, config: SimConfig) -> SimState:
    with open(str(path) + ".meta.json") as fh:
        meta = json.load(fh)
    if meta["config_sha256"] != config_hash(config):
        raise ValueError("checkpoint was produced by a different config")
    return SimState(field=load_field(path), t=float(meta["t"]),
                    step_index=int(meta["step_index"]))


def run(config: SimConfig, out_dir=None, restart_from=None) -> RunResult:
    """Advance from t = 0 (or a checkpoint) to t_end, recording
    diagnostics every `cadence` steps.

    Norm growth beyond abort_factor (or any non-finite coefficient)
    stops the run and flags the result; everything recorded up to that
    point is returned.  With out_dir set, writes diagnostics.csv, the
    coordinate-row archive, and a final checkpoint.
    """
    g = config.make_grid()
    evaluator = MultiplierEvaluator(g, config.make_params()) if config.monitor else None
    if restart_from is not None:
        state = read_checkpoint(restart_from, config)
    else:
        state = SimState(field=init_data(config), t=0.0, step_index=0)

    n_steps = int(round(config.t_end / config.dt))
    t_grid = state.t + config.dt * np.arange(n_steps - state.step_index + 1)

    times = []
    series = {name: [] for name in DIAG_COLUMNS if name != "t"}
    u10_rows = []
    f0_rows = []
    ik0 = g.shape[0] // 2
    neq_mask = (g.k != 0)[:, None]

    def record(st: SimState):
        c = st.field.coef
        times.append(st.t)
        series["l2"].append(math.sqrt(g.d_eta * float(np.sum(np.abs(c) ** 2))))
        series["l2_neq"].append(
            math.sqrt(g.d_eta * float(np.sum(np.abs(c) ** 2 * neq_mask)))
        )
        if evaluator is not None:
            for key, val in energy_monitor(st.field, st.t, evaluator).items():
                series[key].append(val)
        else:
            for key in ("E_A", "E_gamma_neq", "CK_lambda", "CK_W", "CK_G", "diss"):
                series[key].append(math.nan)
        u10_rows.append(_u10_row(st.field, st.t))
        f0_rows.append(st.field.coef[ik0].copy())

    record(state)
    l2_start = series["l2"][0]
    aborted = False
    reason = None
    while state.step_index < n_steps:
        try:
            state = step(state, config.dt, config)
        except CFLViolation as exc:
            aborted = True
            reason = str(exc)
            break
        cur = math.sqrt(g.d_eta * float(np.sum(np.abs(state.field.coef) ** 2)))
        if not math.isfinite(cur) or (l2_start > 0.0 and cur > config.abort_factor * l2_start):
            record(state)
            aborted = True
            reason = (
                f"instability: l2 norm {cur:.4g} exceeds "
                f"{config.abort_factor:.1g} x initial {l2_start:.4g} at t={state.t:.4g}"
            )
            break
        if state.step_index % config.cadence == 0 or state.step_index == n_steps:
            record(state)
        if (
            out_dir is not None
            and config.checkpoint_every > 0
            and state.step_index % config.checkpoint_every == 0
        ):
            path = os.path.join(out_dir, f"checkpoint_{state.step_index:08d}.field")
            write_checkpoint(path, state, config)

    result = RunResult(
        config=config,
        times=np.array(times),
        series={k: np.array(v) for k, v in series.items()},
        u10_rows=np.array(u10_rows),
        f0_rows=np.array(f0_rows),
        final=state.field,
        aborted=aborted,
        abort_reason=reason,
    )
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        csv_path = os.path.join(out_dir, "diagnostics.csv")
        with open(csv_path, "w") as fh:
            fh.write(",".join(DIAG_COLUMNS) + "\n")
            for i, t in enumerate(result.times):
                row = [f"{t:.16g}"] + [
                    f"{result.series[name][i]:.16g}" for name in DIAG_COLUMNS[1:]
                ]
                fh.write(",".join(row) + "\n")
        np.savez(
            os.path.join(out_dir, "coord_rows.npz"),
            times=result.times, u10=result.u10_rows, f0=result.f0_rows,
            eta=g.eta,
        )
        ck = os.path.join(out_dir, "final.field")
        write_checkpoint(ck, state, config)
        result.checkpoints.append(ck)
    return result
