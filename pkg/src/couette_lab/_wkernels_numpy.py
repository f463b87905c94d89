"""Vectorized numpy implementation of the piecewise weight kernels.

Both backends (this module and the numba twin) expose the same three batch
functions and must agree to rounding error; the test suite cross-checks
them.  All inputs are flat float64/int64 arrays of a common length n.

Conventions shared by the backends:

* ``a`` is the absolute transverse frequency.  Frequencies below 1 carry
  trivial weights (log w = log g = 0, zero rate).
* Interval index ``k*`` for a time t is the integer nearest a/t with ties
  resolved downward, so breakpoints belong to the later interval and all
  reported rates are right-hand one-sided derivatives.
* ``branch`` selects which critical intervals use the resonant profile:
  0 never (pure non-resonant weight), 1 only the interval matching
  ``kmode`` (the mode's own critical layer), 2 every interval (the
  special all-resonant comparison weight).
* Growth bookkeeping runs in log space; the cumulative non-resonant
  jumps use lgamma, which keeps single evaluations O(1) even for
  frequencies around 1e6 where the weights reach exp(4000).
"""

import numpy as np
from scipy.special import gammaln

__all__ = ["w_batch", "g_batch", "m_batch"]


def w_batch(t, a, kmode, branch, beta, c1k):
    """Evaluate log w and the right one-sided d/dt log w.

    Parameters
    ----------
    t, a : (n,) float64
        Evaluation times and absolute frequencies.
    kmode : (n,) int64
        Mode index owning the resonant interval (used when branch == 1).
    branch : (n,) int64
        Resonance policy per element, see module docstring.
    beta, c1k : float
        Dissipation exponent and the product C1*kappa (1/2 under the
        normalization 1 + 2*C1*kappa = 2).

    Returns
    -------
    (logw, rate) : pair of (n,) float64 arrays
    """
    t = np.asarray(t, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    kmode = np.asarray(kmode, dtype=np.int64)
    branch = np.asarray(branch, dtype=np.int64)
    n = a.shape[0]
    logw = np.zeros(n)
    rate = np.zeros(n)

    one = 1.0 - 3.0 * beta
    two = 2.0 - 3.0 * beta
    s = one / two
    p = 1.0 + 2.0 * c1k

    idx = np.flatnonzero(a >= 1.0)
    if idx.size == 0:
        return logw, rate
    aa = a[idx]
    tt = t[idx]
    live = tt < aa + aa ** one / 8.0
    idx, aa, tt = idx[live], aa[live], tt[live]
    if idx.size == 0:
        return logw, rate

    Es = np.maximum(np.floor(aa ** s).astype(np.int64), 1)
    lna = np.log(aa)
    EsF = Es.astype(np.float64)
    tbot = aa / EsF - aa ** one / (8.0 * EsF ** two)

    frozen = tt < tbot
    S_top = EsF * one * lna - two * gammaln(EsF + 1.0)
    logw[idx[frozen]] = -p * S_top[frozen]

    mid = ~frozen
    idx, aa, tt, lna, Es = idx[mid], aa[mid], tt[mid], lna[mid], Es[mid]
    if idx.size == 0:
        return logw, rate

    ks = np.clip(np.ceil(aa / tt - 0.5).astype(np.int64), 1, Es)
    ksF = ks.astype(np.float64)
    u = tt - aa / ksF
    r = aa ** one / ksF ** two
    d = r / 8.0
    ac = 8.0 * (1.0 - 1.0 / r)
    lw_plus = -p * ((ksF - 1.0) * one * lna - two * gammaln(ksF))

    gap_hi = u >= d
    gap_lo = u < -d
    logw[idx[gap_hi]] = lw_plus[gap_hi]
    logw[idx[gap_lo]] = lw_plus[gap_lo] - p * np.log(r[gap_lo])

    ins = ~(gap_hi | gap_lo)
    ii = idx[ins]
    if ii.size == 0:
        return logw, rate
    ui, ri, aci, lwi, ksi = u[ins], r[ins], ac[ins], lw_plus[ins], ks[ins]
    b = 1.0 + aci * np.abs(ui)
    lb = np.log(b)
    lr = np.log(ri)
    pos = ui >= 0.0
    lw_nr = np.where(pos, lwi + c1k * (lb - lr), lwi - c1k * lr - (1.0 + c1k) * lb)
    rt_nr = np.where(pos, c1k, 1.0 + c1k) * aci / b
    use_r = (branch[ii] == 2) | ((branch[ii] == 1) & (ksi == kmode[ii]))
    sg = np.where(pos, 1.0, -1.0)
    logw[ii] = np.where(use_r, lw_nr + lb - lr, lw_nr)
    rate[ii] = np.where(use_r, rt_nr + sg * aci / b, rt_nr)
    return logw, rate


def g_batch(t, a, aidx, gb_flat, gb_off, Es_u, Ea_u, beta, s, nu, kappa):
    """Evaluate log g and d/dt log g from precomputed boundary tables.

    ``aidx`` maps each element to a frequency entry; ``gb_flat[gb_off[i] + m]``
    holds log g at the interval boundary t_{m,a} for the i-th frequency,
    m = 0 .. Ea (gb_off has one trailing sentinel).  Es_u / Ea_u give the
    strong-interval count E(a^s) and total interval count E(a).
    """
    t = np.asarray(t, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    aidx = np.asarray(aidx, dtype=np.int64)
    n = a.shape[0]
    logg = np.zeros(n)
    rate = np.zeros(n)

    one = 1.0 - 3.0 * beta
    two = 2.0 - 3.0 * beta
    nu23 = nu ** (2.0 / 3.0)
    nub = nu ** beta

    idx = np.flatnonzero((a >= 1.0) & (t < 2.0 * a))
    if idx.size == 0:
        return logg, rate
    aa = a[idx]
    tt = t[idx]
    off = gb_off[aidx[idx]]
    Ea = Ea_u[aidx[idx]]
    Es = Es_u[aidx[idx]]
    EaF = Ea.astype(np.float64)

    frozen = tt < 2.0 * aa / (2.0 * EaF + 1.0)
    logg[idx[frozen]] = gb_flat[(off + Ea)[frozen]]

    mid = ~frozen
    idx, aa, tt, off, Ea, Es = idx[mid], aa[mid], tt[mid], off[mid], Ea[mid], Es[mid]
    if idx.size == 0:
        return logg, rate

    ks = np.clip(np.ceil(aa / tt - 0.5).astype(np.int64), 1, Ea)
    ksF = ks.astype(np.float64)
    u = tt - aa / ksF
    strong = ks <= Es
    rho = np.where(strong, aa ** one / ksF ** two, 1.0)
    frg = (1.0 + aa ** (2.0 * (s - 1.0)) / nu23) ** (1.5 * beta)
    cut = (1.0 + nu23 * (aa / ksF) ** 2) ** (-0.75)
    c = np.where(strong, kappa, kappa * frg * cut * nub * aa / ksF ** 2)
    arc = np.arctan(u / rho) + np.arctan(aa / ((2.0 * ksF + 1.0) * ksF * rho))
    logg[idx] = gb_flat[off + ks] + c * arc
    rate[idx] = c * rho / (rho * rho + u * u)
    return logg, rate


def m_batch(t, k, eta, nu):
    """log of the inverse-Laplacian commutator multiplier and its rate.

    For k != 0: log m = (1/k) * (atan(nu^(1/3) * (k t - eta)) +
    atan(nu^(1/3) * eta)), and d/dt log m = nu^(1/3) /
    (1 + nu^(2/3) (eta - k t)^2).  The k = 0 row is identically 1.
    """
    t = np.asarray(t, dtype=np.float64)
    k = np.asarray(k, dtype=np.float64)
    eta = np.asarray(eta, dtype=np.float64)
    nu13 = nu ** (1.0 / 3.0)
    nz = k != 0.0
    kk = np.where(nz, k, 1.0)
    logm = np.where(
        nz,
        (np.arctan(nu13 * (k * t - eta)) + np.arctan(nu13 * eta)) / kk,
        0.0,
    )
    rate = np.where(nz, nu13 / (1.0 + nu13 * nu13 * (eta - k * t) ** 2), 0.0)
    return logm, rate
