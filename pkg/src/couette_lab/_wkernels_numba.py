"""Numba implementation of the piecewise weight kernels.

Same contracts as couette_lab._wkernels_numpy; see that module for the
shared conventions.  Scalar per-element logic compiles with @njit and the
batch wrappers loop over flat arrays.
"""

import math

import numpy as np
from numba import njit

__all__ = ["w_batch", "g_batch", "m_batch"]


@njit(cache=True)
def _w_scalar(t, a, km, br, one, two, s, p, c1k):
    if a < 1.0:
        return 0.0, 0.0
    if t >= a + a ** one / 8.0:
        return 0.0, 0.0
    Es = int(math.floor(a ** s))
    if Es < 1:
        Es = 1
    lna = math.log(a)
    EsF = float(Es)
    tbot = a / EsF - a ** one / (8.0 * EsF ** two)
    if t < tbot:
        S = EsF * one * lna - two * math.lgamma(EsF + 1.0)
        return -p * S, 0.0
    ks = int(math.ceil(a / t - 0.5))
    if ks < 1:
        ks = 1
    if ks > Es:
        ks = Es
    ksF = float(ks)
    u = t - a / ksF
    r = a ** one / ksF ** two
    d = r / 8.0
    ac = 8.0 * (1.0 - 1.0 / r)
    lw_plus = -p * ((ksF - 1.0) * one * lna - two * math.lgamma(ksF))
    if u >= d:
        return lw_plus, 0.0
    if u < -d:
        return lw_plus - p * math.log(r), 0.0
    b = 1.0 + ac * abs(u)
    lb = math.log(b)
    lr = math.log(r)
    if u >= 0.0:
        lw = lw_plus + c1k * (lb - lr)
        rt = c1k * ac / b
        sg = 1.0
    else:
        lw = lw_plus - c1k * lr - (1.0 + c1k) * lb
        rt = (1.0 + c1k) * ac / b
        sg = -1.0
    if br == 2 or (br == 1 and ks == km):
        lw += lb - lr
        rt += sg * ac / b
    return lw, rt


@njit(cache=True)
def w_batch(t, a, kmode, branch, beta, c1k):
    one = 1.0 - 3.0 * beta
    two = 2.0 - 3.0 * beta
    s = one / two
    p = 1.0 + 2.0 * c1k
    n = a.shape[0]
    logw = np.zeros(n)
    rate = np.zeros(n)
    for i in range(n):
        lw, rt = _w_scalar(t[i], a[i], kmode[i], branch[i], one, two, s, p, c1k)
        logw[i] = lw
        rate[i] = rt
    return logw, rate


@njit(cache=True)
def _g_scalar(t, a, off, Es, Ea, gb_flat, one, two, s, nu23, nub, kappa, beta):
    if a < 1.0 or t >= 2.0 * a:
        return 0.0, 0.0
    EaF = float(Ea)
    if t < 2.0 * a / (2.0 * EaF + 1.0):
        return gb_flat[off + Ea], 0.0
    ks = int(math.ceil(a / t - 0.5))
    if ks < 1:
        ks = 1
    if ks > Ea:
        ks = Ea
    ksF = float(ks)
    u = t - a / ksF
    if ks <= Es:
        rho = a ** one / ksF ** two
        c = kappa
    else:
        frg = (1.0 + a ** (2.0 * (s - 1.0)) / nu23) ** (1.5 * beta)
        cut = (1.0 + nu23 * (a / ksF) ** 2) ** (-0.75)
        rho = 1.0
        c = kappa * frg * cut * nub * a / (ksF * ksF)
    arc = math.atan(u / rho) + math.atan(a / ((2.0 * ksF + 1.0) * ksF * rho))
    lg = gb_flat[off + ks] + c * arc
    rt = c * rho / (rho * rho + u * u)
    return lg, rt


@njit(cache=True)
def g_batch(t, a, aidx, gb_flat, gb_off, Es_u, Ea_u, beta, s, nu, kappa):
    one = 1.0 - 3.0 * beta
    two = 2.0 - 3.0 * beta
    nu23 = nu ** (2.0 / 3.0)
    nub = nu ** beta
    n = a.shape[0]
    logg = np.zeros(n)
    rate = np.zeros(n)
    for i in range(n):
        ai = aidx[i]
        lg, rt = _g_scalar(
            t[i], a[i], gb_off[ai], Es_u[ai], Ea_u[ai], gb_flat,
            one, two, s, nu23, nub, kappa, beta,
        )
        logg[i] = lg
        rate[i] = rt
    return logg, rate


@njit(cache=True)
def m_batch(t, k, eta, nu):
    nu13 = nu ** (1.0 / 3.0)
    n = k.shape[0]
    logm = np.zeros(n)
    rate = np.zeros(n)
    for i in range(n):
        if k[i] != 0.0:
            logm[i] = (
                math.atan(nu13 * (k[i] * t[i] - eta[i])) + math.atan(nu13 * eta[i])
            ) / k[i]
            rate[i] = nu13 / (1.0 + nu13 * nu13 * (eta[i] - k[i] * t[i]) ** 2)
    return logm, rate
