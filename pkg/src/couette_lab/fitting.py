"""Least-squares decay-rate fitting in log space.

Three model families cover the decay laws that show up in the Couette
problem: exp_nu13 (enhanced dissipation, C*exp(-c*nu^(1/3)*t)),
exp_cubic (linear-in-time viscous mixing, C*exp(-c*nu*t^3)), and power
(inviscid damping, C*t^(-p)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["DecayFit", "fit_decay", "MODELS"]

MODELS = ("exp_nu13", "exp_cubic", "power")


@dataclass(frozen=True)
class DecayFit:
    model: str
    C: float
    rate: float
    residual: float
    window: tuple
    n_points: int

    def predict(self, t, nu: float = None):
        t = np.asarray(t, dtype=float)
        if self.model == "exp_nu13":
            return self.C * np.exp(-self.rate * nu ** (1.0 / 3.0) * t)
        if self.model == "exp_cubic":
            return self.C * np.exp(-self.rate * nu * t ** 3)
        return self.C * t ** (-self.rate)


def fit_decay(times, values, model: str, window, nu: float = None) -> DecayFit:
    """Fit one decay model to a positive series on a time window.

    The regression is linear in log space: log y against nu^(1/3)*t,
    nu*t^3, or log t.  The rate comes back positive for decaying data;
    residual is the rms log misfit.
    """
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}; choose from {MODELS}")
    if model in ("exp_nu13", "exp_cubic") and nu is None:
        raise ValueError(f"model {model!r} requires nu")
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    lo, hi = window
    sel = (times >= lo) & (times <= hi)
    if model == "power":
        sel &= times > 0.0
    t = times[sel]
    y = values[sel]
    if t.size < 2:
        raise ValueError(f"window {window} selects {t.size} points; need >= 2")
    if np.any(y <= 0.0):
        raise ValueError("nonpositive values inside the fit window")
    if model == "exp_nu13":
        x = nu ** (1.0 / 3.0) * t
    elif model == "exp_cubic":
        x = nu * t ** 3
    else:
        x = np.log(t)
    logy = np.log(y)
    slope, intercept = np.polyfit(x, logy, 1)
    resid = logy - (slope * x + intercept)
    return DecayFit(
        model=model,
        C=float(np.exp(intercept)),
        rate=float(-slope),
        residual=float(np.sqrt(np.mean(resid ** 2))),
        window=(float(lo), float(hi)),
        n_points=int(t.size),
    )
