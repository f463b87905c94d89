"""Command-line surface.

    couette-lab <subcommand> --config FILE [--seed N] [--out DIR]

One JSON config per invocation; every artifact lands under --out next
to a manifest listing the files and the sha256 of the resolved config,
so identical config + seed reproduce identical outputs bit for bit.

Subcommands: lin (exact propagator decay table), nl (nonlinear run),
weights (multiplier tables), toys (resonance models), audit (lemma
sampling audits), scan (threshold scan over nu and eps).
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import sys

import numpy as np

from .bench import ScanConfig, emit, threshold_scan
from .grid import Grid
from .lemma_lab import run_all_audits
from .linprop import decay_report
from .nlsolve import SimConfig, init_data, run
from .toys import cascade_amplification, export_trajectory, integrate_strong, integrate_weak
from .weights import MultiplierParams, dump_weight_tables

__all__ = ["main"]


def _load_config(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _config_digest(cfg: dict) -> str:
    return hashlib.sha256(
        json.dumps(cfg, sort_keys=True).encode()
    ).hexdigest()


def _manifest(out_dir: str, subcommand: str, cfg: dict, seed, artifacts) -> str:
    path = os.path.join(out_dir, "manifest.json")
    doc = {
        "subcommand": subcommand,
        "config_sha256": _config_digest(cfg),
        "seed": seed,
        "artifacts": sorted(os.path.relpath(a, out_dir) for a in artifacts),
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
    return path


def _sim_from(cfg: dict, seed) -> SimConfig:
    sim = dict(cfg["sim"])
    if seed is not None:
        sim["seed"] = int(seed)
    return SimConfig(**sim)


def cmd_lin(cfg: dict, seed, out_dir: str) -> int:
    """Closed-form evolution of random Gevrey data; decay table + fits."""
    sim = _sim_from(cfg, seed)
    ts = cfg.get("times", {"start": 0.0, "stop": 100.0, "num": 201})
    times = np.linspace(float(ts["start"]), float(ts["stop"]), int(ts["num"]))
    window = tuple(cfg["fit_window"]) if "fit_window" in cfg else None
    csv_path = os.path.join(out_dir, "linear_decay.csv")
    json_path = os.path.join(out_dir, "linear_decay.json")
    decay_report(init_data(sim), sim.nu, times, csv_path=csv_path,
                 json_path=json_path, fit_window=window)
    _manifest(out_dir, "lin", cfg, seed, [csv_path, json_path])
    return 0


def cmd_nl(cfg: dict, seed, out_dir: str) -> int:
    sim = _sim_from(cfg, seed)
    result = run(sim, out_dir=out_dir, restart_from=cfg.get("restart_from"))
    arts = [os.path.join(out_dir, n) for n in
            ("diagnostics.csv", "coord_rows.npz", "final.field",
             "final.field.meta.json")]
    _manifest(out_dir, "nl", cfg, seed, arts)
    if result.aborted:
        print(f"run aborted: {result.abort_reason}", file=sys.stderr)
        return 1
    return 0


def cmd_weights(cfg: dict, seed, out_dir: str) -> int:
    params = MultiplierParams(beta=float(cfg["beta"]), nu=float(cfg["nu"]))
    eta_list = [float(e) for e in cfg.get("eta_list", [16.0, 64.0, 256.0])]
    path = os.path.join(out_dir, "weight_tables.csv")
    dump_weight_tables(path, eta_list, params)
    _manifest(out_dir, "weights", cfg, seed, [path])
    return 0


def cmd_toys(cfg: dict, seed, out_dir: str) -> int:
    params = MultiplierParams(beta=float(cfg["beta"]), nu=float(cfg["nu"]))
    mode = cfg.get("mode", "strong")
    arts = []
    summary = {"mode": mode}
    if mode == "strong":
        tr = integrate_strong(int(cfg.get("k", 1)), float(cfg["eta"]), params,
                              init=tuple(cfg.get("init", (1.0, 0.0))))
        path = os.path.join(out_dir, "toy_strong.csv")
        export_trajectory(tr, path)
        arts.append(path)
        summary.update(tr.meta)
        summary["final"] = [float(tr.values[-1, 0]), float(tr.values[-1, 1])]
    elif mode == "weak":
        tr = integrate_weak(float(cfg["eta"]), params)
        path = os.path.join(out_dir, "toy_weak.csv")
        export_trajectory(tr, path)
        arts.append(path)
        summary.update(tr.meta)
        summary["final"] = float(tr.values[-1, 0])
    elif mode == "cascade":
        est = cascade_amplification(float(cfg["eta"]), params)
        summary.update(dataclasses.asdict(est))
        summary["ratio"] = est.ratio
    else:
        raise ValueError(f"unknown toy mode {mode!r}")
    spath = os.path.join(out_dir, "toy_summary.json")
    with open(spath, "w") as fh:
        json.dump(summary, fh, indent=2, default=float)
    arts.append(spath)
    _manifest(out_dir, "toys", cfg, seed, arts)
    return 0


def cmd_audit(cfg: dict, seed, out_dir: str) -> int:
    reports = run_all_audits(
        seed=int(seed if seed is not None else cfg.get("seed", 0)),
        beta=float(cfg.get("beta", 1.0 / 6.0)),
        nu=float(cfg.get("nu", 1e-4)),
        fast=bool(cfg.get("fast", False)),
    )
    arts = []
    ok = True
    for rep in reports:
        path = os.path.join(out_dir, f"audit_{rep.lemma}.json")
        with open(path, "w") as fh:
            fh.write(rep.to_json())
        arts.append(path)
        informational = rep.extra.get("informational", False)
        mark = "PASS" if rep.passed else ("INFO" if informational else "FAIL")
        print(f"[{mark}] {rep.lemma} (n={rep.n_samples})")
        if not rep.passed and not informational:
            ok = False
    _manifest(out_dir, "audit", cfg, seed, arts)
    return 0 if ok else 1


def cmd_scan(cfg: dict, seed, out_dir: str) -> int:
    scfg = dict(cfg)
    formats = scfg.pop("formats", ["csv", "json"])
    if seed is not None:
        scfg["sim"] = {**scfg["sim"], "seed": int(seed)}
    scan_config = ScanConfig.from_json(json.dumps(scfg))
    result = threshold_scan(scan_config)
    arts = []
    for fmt in formats:
        arts.extend(emit(result, fmt, out_dir))
    _manifest(out_dir, "scan", cfg, seed, arts)
    failed = [c for c in result.cells if c.verdict == "failed"]
    return 0 if not failed else 1


_COMMANDS = {
    "lin": cmd_lin,
    "nl": cmd_nl,
    "weights": cmd_weights,
    "toys": cmd_toys,
    "audit": cmd_audit,
    "scan": cmd_scan,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="couette-lab",
        description="Shear-flow stability laboratory: exact propagator, "
        "nonlinear solver, weight tables, resonance toys, lemma audits, "
        "threshold scans.",
    )
    parser.add_argument("subcommand", choices=sorted(_COMMANDS))
    parser.add_argument("--config", required=True, help="JSON config file")
    parser.add_argument("--seed", type=int, default=None,
                        help="overrides the config's seed")
    parser.add_argument("--out", default="couette-out", help="output directory")
    args = parser.parse_args(argv)
    cfg = _load_config(args.config)
    os.makedirs(args.out, exist_ok=True)
    return _COMMANDS[args.subcommand](cfg, args.seed, args.out)


if __name__ == "__main__":
    sys.exit(main())
