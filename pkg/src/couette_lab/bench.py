"""Threshold scans over (nu, eps) and artifact emission.

A scan cell runs the nonlinear solver, fits the slow exponential decay
rate of the nonzero-in-x vorticity mass on the post-transient window,
and measures the transient amplification.  The stability verdict
compares the fitted rate against the same configuration run with the
nonlinearity switched off, so the reference is always the discrete
linear dynamics rather than an asymptotic formula.  Verdict thresholds
travel with the scan configuration; nothing is hard-coded.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .fitting import DecayFit, fit_decay
from .nlsolve import RunResult, SimConfig, run

__all__ = [
    "ScanConfig",
    "CellResult",
    "ScanResult",
    "threshold_scan",
    "neq_series",
    "emit",
    "SCAN_COLUMNS",
]

SCAN_COLUMNS = (
    "nu", "eps", "rate", "rate_linear", "amplification",
    "final_over_peak", "verdict", "error",
)


@dataclass(frozen=True)
class ScanConfig:
    """Scan grid plus the verdict thresholds.

    stable iff fitted rate >= rate_fraction * linear reference rate and
    transient amplification < amp_bound.  window_start defaults to
    twice the largest transverse frequency on the grid (past every
    critical time); fit_model is the slow-exponential law in nu^(1/3) t.
    """

    sim: SimConfig
    nu_list: tuple
    eps_list: tuple
    rate_fraction: float = 0.5
    amp_bound: float = 2.0
    window_start: float = 0.0
    fit_model: str = "exp_nu13"

    def __post_init__(self):
        object.__setattr__(self, "nu_list", tuple(float(x) for x in self.nu_list))
        object.__setattr__(self, "eps_list", tuple(float(x) for x in self.eps_list))
        if self.rate_fraction <= 0.0 or self.amp_bound <= 1.0:
            raise ValueError("need rate_fraction > 0 and amp_bound > 1")

    def to_json(self) -> str:
        d = dataclasses.asdict(self)
        d["sim"] = dataclasses.asdict(self.sim)
        return json.dumps(d, sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text) -> "ScanConfig":
        d = json.loads(text) if isinstance(text, str) else dict(text)
        d["sim"] = SimConfig(**d["sim"])
        return cls(**d)


@dataclass
class CellResult:
    nu: float
    eps: float
    rate: float = math.nan
    rate_linear: float = math.nan
    amplification: float = math.nan
    final_over_peak: float = math.nan
    verdict: str = "failed"
    error: str = ""

    def row(self):
        return (f"{self.nu:.8g}", f"{self.eps:.8g}", f"{self.rate:.8g}",
                f"{self.rate_linear:.8g}", f"{self.amplification:.8g}",
                f"{self.final_over_peak:.8g}", self.verdict, self.error)


@dataclass
class ScanResult:
    config: ScanConfig
    cells: list = field(default_factory=list)

    def cell(self, nu: float, eps: float) -> CellResult:
        for c in self.cells:
            if c.nu == nu and c.eps == eps:
                return c
        raise KeyError((nu, eps))

    def to_dict(self) -> dict:
        return {
            "config": json.loads(self.config.to_json()),
            "cells": [dataclasses.asdict(c) for c in self.cells],
        }


def neq_series(result: RunResult):
    return result.times, result.series["l2_neq"]


def _window(cfg: ScanConfig, sim: SimConfig):
    start = cfg.window_start
    if start <= 0.0:
        start = 2.0 * sim.make_grid().eta_max
    if start >= sim.t_end:
        start = 0.5 * sim.t_end
    return (start, sim.t_end)


def _fit_rate(cfg: ScanConfig, sim: SimConfig, result: RunResult) -> DecayFit:
    times, vals = neq_series(result)
    return fit_decay(times, vals, cfg.fit_model, _window(cfg, sim), nu=sim.nu)


def threshold_scan(config: ScanConfig) -> ScanResult:
    """Run every (nu, eps) cell; failures are recorded, never raised.

    The linear reference rate is computed once per nu by rerunning the
    cell configuration with the nonlinearity off.
    """
    out = ScanResult(config=config)
    for nu in config.nu_list:
        lin_rate = math.nan
        lin_err = "linear reference unavailable"
        try:
            lin_sim = dataclasses.replace(config.sim, nu=nu, nonlinear=False,
                                          monitor=False)
            lin_fit = _fit_rate(config, lin_sim, run(lin_sim))
            lin_rate = lin_fit.rate
        except Exception as exc:  # noqa: BLE001 - cell errors are data
            lin_err = f"linear reference: {exc}"
        for eps in config.eps_list:
            cell = CellResult(nu=nu, eps=eps, rate_linear=lin_rate)
            out.cells.append(cell)
            if not math.isfinite(lin_rate):
                cell.error = lin_err
                continue
            try:
                sim = dataclasses.replace(config.sim, nu=nu, eps=eps,
                                          monitor=False)
                res = run(sim)
                times, vals = neq_series(res)
                peak = float(np.max(vals))
                cell.amplification = peak / vals[0] if vals[0] > 0 else math.inf
                cell.final_over_peak = float(vals[-1]) / peak if peak > 0 else math.nan
                if res.aborted:
                    cell.verdict = "unstable"
                    cell.error = res.abort_reason or "aborted"
                    continue
                cell.rate = _fit_rate(config, sim, res).rate
                stable = (
                    cell.rate >= config.rate_fraction * lin_rate
                    and cell.amplification < config.amp_bound
                )
                cell.verdict = "stable" if stable else "unstable"
            except Exception as exc:  # noqa: BLE001 - cell errors are data
                cell.error = str(exc)
    return out


# ---------------------------------------------------------------------------
# artifact emission

_PLOT_SCRIPT = """\
#!/usr/bin/env python3
# Plot helper for {csv_name}: reads only that CSV, no package imports.
import csv
import sys

rows = []
with open("{csv_name}") as fh:
    for rec in csv.DictReader(fh):
        rows.append(rec)
if not rows:
    sys.exit("no data rows in {csv_name}")

try:
    import matplotlib.pyplot as plt
except ImportError:
    sys.exit("matplotlib not installed; inspect {csv_name} directly")

fig, ax = plt.subplots()
for nu in sorted({{r["nu"] for r in rows}}):
    sel = [r for r in rows if r["nu"] == nu and r["verdict"] != "failed"]
    eps = [float(r["eps"]) for r in sel]
    amp = [float(r["amplification"]) for r in sel]
    ax.loglog(eps, amp, "o-", label=f"nu={{nu}}")
ax.set_xlabel("eps")
ax.set_ylabel("transient amplification")
ax.legend()
fig.savefig("{stem}.png", dpi=150)
print("wrote {stem}.png")
"""


def emit(result: ScanResult, fmt: str, out_dir: str, stem: str = "scan") -> list:
    """Write the scan result; returns the created file paths.

    csv: one row per cell under the fixed column schema.  json: the
    full nested result.  plotdata: the CSV plus a standalone plotting
    script that reads only the CSV.
    """
    os.makedirs(out_dir, exist_ok=True)
    made = []
    if fmt not in ("csv", "json", "plotdata"):
        raise ValueError(f"unknown format {fmt!r}")
    if fmt in ("csv", "plotdata"):
        path = os.path.join(out_dir, f"{stem}.csv")
        with open(path, "w") as fh:
            fh.write(",".join(SCAN_COLUMNS) + "\n")
            for c in result.cells:
                fh.write(",".join(c.row()) + "\n")
        made.append(path)
    if fmt == "json":
        path = os.path.join(out_dir, f"{stem}.json")
        with open(path, "w") as fh:
            json.dump(result.to_dict(), fh, indent=2, default=float)
        made.append(path)
    if fmt == "plotdata":
        script = os.path.join(out_dir, f"plot_{stem}.py")
        with open(script, "w") as fh:
            fh.write(_PLOT_SCRIPT.format(csv_name=f"{stem}.csv", stem=stem))
        made.append(script)
    return made
