"""Time-dependent Fourier multipliers for the Couette stability energy method.

Everything here lives on the frequency side.  For a transverse frequency
eta with |eta| >= 1 the time axis splits into critical intervals
I_k = [2|eta|/(2k+1), 2|eta|/(2k-1)] around the resonant times |eta|/k.
Inside each interval sits a narrower resonant layer
[|eta|/k - d, |eta|/k + d] with half-width d = |eta|^(1-3b) / (8 k^(2-3b))
(b is the dissipation exponent ``beta``).  Three weight families are
built from this geometry:

* w: the piecewise-power resonance weight, with a non-resonant and a
  resonant profile per layer, constant on the gaps, and total growth
  prod_k (|eta|^(1-3b)/k^(2-3b))^2 across the strong layers k <= E(|eta|^s).
* g: the slow arctan weight solving a first-order ODE interval by
  interval, with a stronger rate on strong layers and a viscosity-damped
  rate on the remaining layers up to E(|eta|).
* m: the commutator multiplier exp((1/k)(atan(nu^(1/3)(kt - eta)) +
  atan(nu^(1/3) eta))), uniformly comparable to 1.

The composite multiplier A combines an enhanced-dissipation exponential,
a shrinking Gevrey radius lambda(t), a Sobolev bracket, and the inverse
weights; A^gamma and A^R are the lower-order and transverse-coordinate
variants.  Rates (one-sided right d/dt log) feed the Cauchy-Kovalevskaya
terms of the energy functional.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.special import gammaln

from . import backend

__all__ = [
    "s_of_beta",
    "MultiplierParams",
    "CriticalLayout",
    "Region",
    "layout",
    "classify",
    "iota",
    "frak_g",
    "frak_w",
    "lambda_of_t",
    "lambda_dot",
    "build_g_boundary",
    "WeightTable",
    "weight_table",
    "w_eval",
    "wR_special",
    "g_eval",
    "m_eval",
    "A_eval",
    "A_gamma_eval",
    "A_R_eval",
    "MultiplierEvaluator",
    "dump_weight_tables",
]


def s_of_beta(beta: float) -> float:
    """Gevrey exponent s = (1 - 3*beta) / (2 - 3*beta) for beta in [0, 1/3]."""
    if not 0.0 <= beta <= 1.0 / 3.0 + 1e-15:
        raise ValueError(f"beta must lie in [0, 1/3], got {beta}")
    return (1.0 - 3.0 * beta) / (2.0 - 3.0 * beta)


@lru_cache(maxsize=8192)
def _lam_integral(t: float, c1: float) -> float:
    # One quad call over a huge interval can miss the mass near x = 1;
    # integrate per decade-pair so every panel is well resolved.
    total = 0.0
    lo = 1.0
    while lo < t:
        hi = min(t, lo * 100.0)
        val, _ = quad(lambda x: (1.0 + x * x) ** (-c1), lo, hi)
        total += val
        lo = hi
    return total


@dataclass(frozen=True)
class MultiplierParams:
    """Parameter bundle for the multiplier family.

    kappa and C1 are tied by the normalization 1 + 2*C1*kappa = 2, which
    fixes the resonant jump exponent to exactly 2; C1 defaults to
    1/(2*kappa).  delta_lam (the Gevrey-radius decay rate) defaults to
    min((lam0 - lam1)/8, half the rate that would exhaust the radius
    budget), keeping lambda(inf) > (lam0 + lam1)/2.
    """

    beta: float
    nu: float
    sigma: int = 11
    gamma: int = 7
    lam0: float = 1.0
    lam1: float = 0.4
    kappa: float = 0.5
    C1: float = 0.0
    c_M: float = 0.125
    c_1: float = 0.625
    delta_lam: float = 0.0
    s: float = field(init=False, default=0.0, compare=False, repr=False)
    c1k: float = field(init=False, default=0.0, compare=False, repr=False)
    lam_t1: float = field(init=False, default=0.0, compare=False, repr=False)
    lam_inf: float = field(init=False, default=0.0, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "s", s_of_beta(self.beta))
        if not 0.0 < self.nu < 1.0:
            raise ValueError("nu must lie in (0, 1)")
        if int(self.sigma) != self.sigma or self.sigma < 11:
            raise ValueError("sigma must be an integer >= 11")
        if int(self.gamma) != self.gamma or not 7 <= self.gamma <= self.sigma - 4:
            raise ValueError("gamma must be an integer in [7, sigma - 4]")
        if not 0.0 < self.lam1 < self.lam0:
            raise ValueError("need 0 < lam1 < lam0")
        if self.kappa <= 0.0:
            raise ValueError("kappa must be positive")
        if self.C1 == 0.0:
            object.__setattr__(self, "C1", 1.0 / (2.0 * self.kappa))
        c1k = self.C1 * self.kappa
        if abs(1.0 + 2.0 * c1k - 2.0) > 1e-12:
            raise ValueError("C1 * kappa must satisfy 1 + 2*C1*kappa = 2")
        object.__setattr__(self, "c1k", c1k)
        if not 0.5 < self.c_1 <= 1.0:
            raise ValueError("c_1 must lie in (1/2, 1] for an integrable decay rate")
        lam_t1 = (3.0 * self.lam0 + self.lam1) / 4.0
        object.__setattr__(self, "lam_t1", lam_t1)
        floor = 0.5 * (self.lam0 + self.lam1)
        I_inf, _ = quad(lambda x: (1.0 + x * x) ** (-self.c_1), 1.0, np.inf)
        if self.delta_lam == 0.0:
            saturating = math.log((1.0 + lam_t1) / (1.0 + floor)) / I_inf
            object.__setattr__(
                self, "delta_lam", min((self.lam0 - self.lam1) / 8.0, 0.5 * saturating)
            )
        lam_inf = (1.0 + lam_t1) * math.exp(-self.delta_lam * I_inf) - 1.0
        object.__setattr__(self, "lam_inf", lam_inf)
        if lam_inf <= floor:
            raise ValueError(
                f"delta_lam={self.delta_lam} drives lambda(inf)={lam_inf:.6g} "
                f"below the floor {floor:.6g}"
            )


def lambda_of_t(t: float, params: MultiplierParams) -> float:
    """Shrinking Gevrey radius: constant up to t = 1, then
    lambda' = -delta_lam * <t>^(-2*c_1) * (1 + lambda)."""
    if t <= 1.0:
        return params.lam_t1
    return (1.0 + params.lam_t1) * math.exp(
        -params.delta_lam * _lam_integral(float(t), params.c_1)
    ) - 1.0


def lambda_dot(t: float, params: MultiplierParams) -> float:
    if t <= 1.0:
        return 0.0
    return -params.delta_lam * (1.0 + t * t) ** (-params.c_1) * (
        1.0 + lambda_of_t(t, params)
    )


# ---------------------------------------------------------------------------
# critical-layer geometry

@dataclass(frozen=True)
class CriticalLayout:
    """Interval data for one frequency: arrays are indexed by the interval
    number m with slot 0 reserved (t_crit[0] = 2|eta| is the top boundary;
    the layer arrays hold nan there)."""

    eta: float
    beta: float
    E_s: int
    E_a: int
    t_crit: np.ndarray
    t_minus: np.ndarray
    t_plus: np.ndarray
    a_res: np.ndarray
    ratio: np.ndarray


def layout(eta: float, beta: float) -> CriticalLayout:
    a = abs(float(eta))
    s = s_of_beta(beta)
    one = 1.0 - 3.0 * beta
    two = 2.0 - 3.0 * beta
    E_a = int(math.floor(a)) if a >= 1.0 else 0
    E_s = int(math.floor(a ** s)) if a >= 1.0 else 0
    m = np.arange(E_a + 1, dtype=np.float64)
    t_crit = 2.0 * a / (2.0 * m + 1.0)
    t_minus = np.full(E_a + 1, np.nan)
    t_plus = np.full(E_a + 1, np.nan)
    a_res = np.full(E_a + 1, np.nan)
    ratio = np.full(E_a + 1, np.nan)
    if E_a >= 1:
        mm = m[1:]
        d = a ** one / (8.0 * mm ** two)
        ctr = a / mm
        t_minus[1:] = ctr - d
        t_plus[1:] = ctr + d
        ratio[1:] = a ** one / mm ** two
        a_res[1:] = 8.0 * (1.0 - mm ** two / a ** one)
    return CriticalLayout(
        eta=float(eta), beta=beta, E_s=E_s, E_a=E_a,
        t_crit=t_crit, t_minus=t_minus, t_plus=t_plus, a_res=a_res, ratio=ratio,
    )


@dataclass(frozen=True)
class Region:
    label: str
    resonant: bool


def classify(t: float, k: int, eta: float, beta: float) -> Region:
    """Locate t relative to mode (k, eta)'s critical geometry.

    Labels: itilde_l / itilde_r inside the resonant layer, i_l / i_r in
    the rest of the critical interval, gap elsewhere in the active weight
    window, outside beyond it.  Half-open on the right so every t gets
    exactly one label.  The resonance flag requires k*eta > 0 and t in
    the closed resonant layer.
    """
    a = abs(float(eta))
    ak = abs(int(k))
    if ak == 0 or a < 1.0:
        return Region("outside", False)
    one = 1.0 - 3.0 * beta
    two = 2.0 - 3.0 * beta
    s = one / two
    ctr = a / ak
    d = a ** one / (8.0 * ak ** two)
    t_lo = 2.0 * a / (2.0 * ak + 1.0)
    t_hi = 2.0 * a / (2.0 * ak - 1.0)
    resonant = bool(k * eta > 0.0 and ctr - d <= t <= ctr + d)
    if ctr - d <= t < ctr:
        return Region("itilde_l", resonant)
    if ctr <= t < ctr + d:
        return Region("itilde_r", resonant)
    if t_lo <= t < ctr - d:
        return Region("i_l", resonant)
    if ctr + d <= t < t_hi:
        return Region("i_r", resonant)
    E_s = max(int(math.floor(a ** s)), 1)
    w_lo = a / E_s - a ** one / (8.0 * E_s ** two)
    w_hi = a + a ** one / 8.0
    if w_lo <= t < w_hi:
        return Region("gap", resonant)
    return Region("outside", resonant)


def iota(k: int, eta: float) -> float:
    """Dominant-slot frequency: k when |k| > |eta|, else eta."""
    return float(k) if abs(k) > abs(eta) else float(eta)


def frak_g(nu: float, eta: float, beta: float) -> float:
    """<nu^(-1/3) |eta|^(s-1)>^(3*beta), the weak-layer correction."""
    s = s_of_beta(beta)
    x = nu ** (-1.0 / 3.0) * abs(eta) ** (s - 1.0)
    return (1.0 + x * x) ** (1.5 * beta)


def frak_w(nu: float, t: float, eta: float, beta: float) -> float:
    """<nu^(1/3) |eta|^(1-s)>^(-3/2 + 3*beta) past the first strong-layer
    boundary 2|eta|/(2 E(|eta|^s) + 1), and 1 before it."""
    a = abs(eta)
    s = s_of_beta(beta)
    E_s = int(math.floor(a ** s)) if a >= 1.0 else 0
    t_cut = 2.0 * a / (2.0 * E_s + 1.0)
    if t < t_cut:
        return 1.0
    x = nu ** (1.0 / 3.0) * a ** (1.0 - s)
    return (1.0 + x * x) ** (0.5 * (-1.5 + 3.0 * beta))


# ---------------------------------------------------------------------------
# tables and scalar evaluation

def build_g_boundary(eta: float, params: MultiplierParams) -> np.ndarray:
    """log g at the interval boundaries t_{m,|eta|}, m = 0 .. E(|eta|).

    Built by backward recursion from g = 1 at t = 2|eta|; entry m holds
    the value at the left boundary of interval m.  Vectorized arctan
    sums keep the build O(E(|eta|)).
    """
    a = abs(float(eta))
    if a < 1.0:
        return np.zeros(1)
    one = 1.0 - 3.0 * params.beta
    two = 2.0 - 3.0 * params.beta
    s = params.s
    E_a = int(math.floor(a))
    E_s = int(math.floor(a ** s))
    m = np.arange(1, E_a + 1, dtype=np.float64)
    strong = m <= E_s
    rho = np.where(strong, a ** one / m ** two, 1.0)
    nu23 = params.nu ** (2.0 / 3.0)
    frg = (1.0 + a ** (2.0 * (s - 1.0)) / nu23) ** (1.5 * params.beta)
    cut = (1.0 + nu23 * (a / m) ** 2) ** (-0.75)
    c = np.where(
        strong, params.kappa, params.kappa * frg * cut * params.nu ** params.beta * a / m ** 2
    )
    F = c * (
        np.arctan(a / ((2.0 * m - 1.0) * m * rho))
        + np.arctan(a / ((2.0 * m + 1.0) * m * rho))
    )
    return np.concatenate(([0.0], -np.cumsum(F)))


@dataclass(frozen=True)
class WeightTable:
    """Per-frequency precomputed data for O(1) weight evaluation."""

    a: float
    params: MultiplierParams
    E_s: int
    E_a: int
    g_boundary: np.ndarray

    @classmethod
    def build(cls, eta: float, params: MultiplierParams) -> "WeightTable":
        a = abs(float(eta))
        E_a = int(math.floor(a)) if a >= 1.0 else 0
        E_s = int(math.floor(a ** params.s)) if a >= 1.0 else 0
        return cls(a=a, params=params, E_s=E_s, E_a=E_a,
                   g_boundary=build_g_boundary(a, params))

    def w_log(self, t: float, kmode: int, branch: int):
        lw, rw = backend.w_batch(
            np.array([float(t)]), np.array([self.a]),
            np.array([abs(int(kmode))], dtype=np.int64),
            np.array([int(branch)], dtype=np.int64),
            self.params.beta, self.params.c1k,
        )
        return float(lw[0]), float(rw[0])

    def g_log(self, t: float):
        lg, rg = backend.g_batch(
            np.array([float(t)]), np.array([self.a]),
            np.array([0], dtype=np.int64),
            self.g_boundary, np.array([0], dtype=np.int64),
            np.array([self.E_s], dtype=np.int64), np.array([self.E_a], dtype=np.int64),
            self.params.beta, self.params.s, self.params.nu, self.params.kappa,
        )
        return float(lg[0]), float(rg[0])


@lru_cache(maxsize=512)
def weight_table(eta: float, params: MultiplierParams) -> WeightTable:
    return WeightTable.build(eta, params)


def w_eval(t: float, k: int, eta: float, params: MultiplierParams):
    """Value of the resonance weight w_k(t, eta) and one-sided d/dt log w.

    The resonant profile applies on mode k's own critical interval when
    k*eta > 0; otherwise the pure non-resonant weight is returned.
    """
    branch = 1 if k * eta > 0 else 0
    tab = weight_table(abs(float(eta)), params)
    lw, rw = tab.w_log(t, abs(k), branch)
    return math.exp(lw), rw


def wR_special(t: float, eta: float, params: MultiplierParams):
    """The all-resonant comparison weight w^R(t, eta) and its log rate."""
    tab = weight_table(abs(float(eta)), params)
    lw, rw = tab.w_log(t, 0, 2)
    return math.exp(lw), rw


def w_nr_log(t: float, eta: float, params: MultiplierParams) -> float:
    """log of the pure non-resonant weight curve at (t, eta)."""
    tab = weight_table(abs(float(eta)), params)
    return tab.w_log(t, 0, 0)[0]


def g_eval(t: float, eta: float, params: MultiplierParams):
    tab = weight_table(abs(float(eta)), params)
    lg, rg = tab.g_log(t)
    return math.exp(lg), rg


def m_eval(t: float, k: int, eta: float, nu: float):
    lm, rm = backend.m_batch(
        np.array([float(t)]), np.array([float(k)]), np.array([float(eta)]), nu
    )
    return math.exp(float(lm[0])), float(rm[0])


def _bracket_log(x: float) -> float:
    return 0.5 * math.log1p(x * x)


def A_eval(t: float, k: int, eta: float, params: MultiplierParams) -> float:
    """Main multiplier A_k(t, eta), composed in log space."""
    io = iota(k, eta)
    branch = 1 if k * io > 0 else 0
    tab = weight_table(abs(io), params)
    lw, _ = tab.w_log(t, abs(k), branch)
    lg, _ = tab.g_log(t)
    lm, _ = backend.m_batch(
        np.array([float(t)]), np.array([float(k)]), np.array([float(eta)]), params.nu
    )
    x = abs(k) + abs(eta)
    log_a = (
        (params.c_M * params.nu ** (1.0 / 3.0) * t if k != 0 else 0.0)
        + lambda_of_t(t, params) * x ** params.s
        + params.sigma * _bracket_log(x)
        - lw - lg - float(lm[0])
    )
    return math.exp(log_a)


def A_gamma_eval(t: float, k: int, eta: float, params: MultiplierParams) -> float:
    """Lower-order multiplier: no w/g factors, bracket power gamma, and an
    extra algebraic enhanced-dissipation prefactor for k != 0."""
    x = abs(k) + abs(eta)
    lam = lambda_of_t(t, params)
    if k == 0:
        return math.exp(lam * abs(eta) ** params.s + params.gamma * _bracket_log(eta))
    e = params.c_M * params.nu ** (1.0 / 3.0) * t
    lm, _ = backend.m_batch(
        np.array([float(t)]), np.array([float(k)]), np.array([float(eta)]), params.nu
    )
    return (1.0 + e) * math.exp(
        e + lam * x ** params.s + params.gamma * _bracket_log(x) - float(lm[0])
    )


def A_R_eval(t: float, eta: float, params: MultiplierParams) -> float:
    """Transverse-coordinate multiplier: zero-mode profile with w^R."""
    tab = weight_table(abs(float(eta)), params)
    lwr, _ = tab.w_log(t, 0, 2)
    lg, _ = tab.g_log(t)
    return math.exp(
        lambda_of_t(t, params) * abs(eta) ** params.s
        + params.sigma * _bracket_log(eta) - lwr - lg
    )


# ---------------------------------------------------------------------------
# grid-bound batch evaluation

class MultiplierEvaluator:
    """Precomputed index maps for evaluating the multiplier family on a
    full (k, eta) coefficient rectangle at arbitrary times.

    The dominant-slot frequency iota(k, eta), its resonance branch, and
    the g boundary tables for every distinct |iota| are assembled once;
    each time query is then two kernel sweeps over the flattened grid.
    """

    def __init__(self, grid, params: MultiplierParams):
        self.grid = grid
        self.params = params
        k = grid.k.astype(np.float64)[:, None]
        eta = grid.eta[None, :]
        nk, nj = grid.shape
        K = np.broadcast_to(k, (nk, nj))
        E = np.broadcast_to(eta, (nk, nj))
        self.k_flat = K.ravel()
        self.eta_flat = E.ravel()
        io = np.where(np.abs(K) > np.abs(E), K, E)
        self.a_flat = np.abs(io).ravel()
        self.branch_flat = (K * io > 0.0).astype(np.int64).ravel()
        self.kmode_flat = np.abs(K).astype(np.int64).ravel()
        self.x_flat = (np.abs(K) + np.abs(E)).ravel()
        self.abs_eta = np.abs(grid.eta)

        au = np.unique(np.concatenate([self.a_flat, self.abs_eta]))
        tables = [weight_table(float(a), params) for a in au]
        self.au = au
        self.Es_u = np.array([tb.E_s for tb in tables], dtype=np.int64)
        self.Ea_u = np.array([tb.E_a for tb in tables], dtype=np.int64)
        lens = np.array([tb.g_boundary.size for tb in tables], dtype=np.int64)
        self.gb_off = np.concatenate(([0], np.cumsum(lens)))[:-1]
        self.gb_flat = np.concatenate([tb.g_boundary for tb in tables])
        self.aidx_flat = np.searchsorted(au, self.a_flat)
        self.aidx_eta = np.searchsorted(au, self.abs_eta)
        self._zeros_eta = np.zeros(self.abs_eta.size, dtype=np.int64)

    def _w(self, t, a, kmode, branch):
        tarr = np.full(a.shape, float(t))
        return backend.w_batch(tarr, a, kmode, branch, self.params.beta, self.params.c1k)

    def _g(self, t, a, aidx):
        tarr = np.full(a.shape, float(t))
        return backend.g_batch(
            tarr, a, aidx, self.gb_flat, self.gb_off, self.Es_u, self.Ea_u,
            self.params.beta, self.params.s, self.params.nu, self.params.kappa,
        )

    def multipliers(self, t: float) -> dict:
        """All multiplier arrays at time t, shaped like the grid.

        Keys: log_A, A, A_gamma, rate_w, rate_g, rate_m, xs (|k,eta|^s),
        lam, lam_dot, symbol (k^2 + (eta - k t)^2).
        """
        p = self.params
        shape = self.grid.shape
        lw, rw = self._w(t, self.a_flat, self.kmode_flat, self.branch_flat)
        lg, rg = self._g(t, self.a_flat, self.aidx_flat)
        tarr = np.full(self.k_flat.shape, float(t))
        lm, rm = backend.m_batch(tarr, self.k_flat, self.eta_flat, p.nu)
        lam = lambda_of_t(t, p)
        lamd = lambda_dot(t, p)
        nz = self.k_flat != 0.0
        xs = self.x_flat ** p.s
        log_a = (
            np.where(nz, p.c_M * p.nu ** (1.0 / 3.0) * t, 0.0)
            + lam * xs
            + p.sigma * 0.5 * np.log1p(self.x_flat ** 2)
            - lw - lg - lm
        )
        e = p.c_M * p.nu ** (1.0 / 3.0) * t
        log_ag = np.where(
            nz,
            math.log1p(e) + e + lam * xs + p.gamma * 0.5 * np.log1p(self.x_flat ** 2) - lm,
            lam * xs + p.gamma * 0.5 * np.log1p(self.x_flat ** 2),
        )
        kk = self.k_flat
        sym = kk ** 2 + (self.eta_flat - kk * t) ** 2
        return {
            "log_A": log_a.reshape(shape),
            "A": np.exp(log_a).reshape(shape),
            "A_gamma": np.exp(log_ag).reshape(shape),
            "rate_w": rw.reshape(shape),
            "rate_g": rg.reshape(shape),
            "rate_m": rm.reshape(shape),
            "xs": xs.reshape(shape),
            "lam": lam,
            "lam_dot": lamd,
            "symbol": sym.reshape(shape),
        }

    def A_R_row(self, t: float) -> np.ndarray:
        """A^R over the transverse frequencies (the k = 0 row)."""
        p = self.params
        lwr, _ = self._w(
            t, self.abs_eta, self._zeros_eta, np.full(self.abs_eta.size, 2, dtype=np.int64)
        )
        lg, _ = self._g(t, self.abs_eta, self.aidx_eta)
        lam = lambda_of_t(t, p)
        log_ar = (
            lam * self.abs_eta ** p.s
            + p.sigma * 0.5 * np.log1p(self.abs_eta ** 2)
            - lwr - lg
        )
        return np.exp(log_ar)

    def A_zero_row(self, t: float) -> np.ndarray:
        """A over the k = 0 row (used by the coordinate-system energy)."""
        p = self.params
        branch = np.zeros(self.abs_eta.size, dtype=np.int64)
        lw, _ = self._w(t, self.abs_eta, branch, branch)
        lg, _ = self._g(t, self.abs_eta, self.aidx_eta)
        lam = lambda_of_t(t, p)
        return np.exp(
            lam * self.abs_eta ** p.s + p.sigma * 0.5 * np.log1p(self.abs_eta ** 2) - lw - lg
        )


# ---------------------------------------------------------------------------
# table export

def dump_weight_tables(path, etas, params: MultiplierParams) -> None:
    """CSV dump of the weight profiles at their breakpoints.

    One row per (eta, k, breakpoint): interval boundaries for every k up
    to E(|eta|), plus the layer edges and center for the strong layers.
    Columns: eta, k, t_breakpoint, w_nr, w_r, g.
    """
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["eta", "k", "t_breakpoint", "w_nr", "w_r", "g"])
        for eta in etas:
            lay = layout(eta, params.beta)
            tab = weight_table(abs(float(eta)), params)
            for k in range(1, lay.E_a + 1):
                ts = [lay.t_crit[k]]
                if k <= lay.E_s:
                    ts += [lay.t_minus[k], abs(eta) / k, lay.t_plus[k]]
                for t in ts:
                    lnr, _ = tab.w_log(t, 0, 0)
                    lr, _ = tab.w_log(t, 0, 2)
                    lg, _ = tab.g_log(t)
                    wr.writerow(
                        [eta, k, f"{t:.12g}", f"{math.exp(lnr):.12g}",
                         f"{math.exp(lr):.12g}", f"{math.exp(lg):.12g}"]
                    )
