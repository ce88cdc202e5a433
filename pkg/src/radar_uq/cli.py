"""``radar-uq`` command line: run scenario sweeps and write CSV/JSON data.

    radar-uq <nominal|montecarlo|sensitivity|budget> --scenario FILE --out FILE
             [--seed N] [--runs N] [--workers N]

Exit status: 0 on success, 2 for an invalid scenario or arguments, 1 for any
other failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .detection import evaluate_detection
from .linearization import error_budget, linearize
from .montecarlo import nominal_states, run_monte_carlo, sensitivity_sweep
from .scenario import Scenario, ScenarioError, load_scenario


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as f:
        w = csv.writer(f, lineterminator="\r\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def _linearized_sweep(scenario: Scenario):
    nom = nominal_states(scenario.sweep, scenario.radar.c_r, scenario.radar.position)
    return nom, linearize(nom.aircraft, nom.radar, scenario.rcs, scenario.p_fa, scenario.uncertainty)


def cmd_nominal(scenario: Scenario, out):
    """Nominal sweep: P_D, SNR, RCS and line-of-sight angles (radians) per angle."""
    nom = nominal_states(scenario.sweep, scenario.radar.c_r, scenario.radar.position)
    det = evaluate_detection(nom.aircraft, nom.radar, scenario.rcs, scenario.p_fa)
    write_csv(out, ["theta_deg", "pd_nominal", "S", "sigma_r", "lambda", "phi"],
              zip(nom.thetas_deg, det.pd, det.snr, det.sigma_r, det.angles.azimuth, det.angles.elevation))


def cmd_montecarlo(scenario: Scenario, out, runs=None, seed=None, workers=None):
    """Long-form Monte Carlo CSV plus a ``<out>.summary.json`` next to it."""
    ens = run_monte_carlo(scenario, runs=runs, seed=seed, workers=workers)
    n_runs, n_ang = ens.pd_runs.shape
    err = ens.pd_error
    rows = ((ens.thetas_deg[k], i, ens.pd_runs[i, k], err[i, k]) for k in range(n_ang) for i in range(n_runs))
    write_csv(out, ["theta_deg", "run", "pd_sample", "pd_error"], rows)

    summary = {
        "runs": n_runs,
        "seed": ens.seed,
        "angles": n_ang,
        "coverage": ens.coverage,
        "max_three_sigma_pd": float(3.0 * ens.sigma_pd.max()),
        "per_angle": [
            {"theta_deg": float(t), "pd_nominal": float(p), "sigma_pd": float(s),
             "sample_mean": float(m), "sample_std": float(sd)}
            for t, p, s, m, sd in zip(ens.thetas_deg, ens.pd_nominal, ens.sigma_pd,
                                       ens.sample_mean, ens.sample_std)
        ],
    }
    summary_path = summary_path_for(out)
    summary_path.write_text(json.dumps(summary, indent=1) + "\n")
    return ens


def summary_path_for(out) -> Path:
    return Path(out).with_suffix(".summary.json")


def cmd_sensitivity(scenario: Scenario, out):
    """3-sigma P_D per level (low, medium, high, then any extra levels)."""
    curves = sensitivity_sweep(scenario)
    names = ["low", "medium", "high"] + sorted(set(curves) - {"low", "medium", "high"})
    write_csv(out, ["theta_deg"] + [f"three_sigma_{n}" for n in names],
              zip(scenario.sweep.thetas_deg(), *(curves[n] for n in names)))
    return curves


def cmd_budget(scenario: Scenario, out):
    nom, lin = _linearized_sweep(scenario)
    budget = error_budget(lin.a_pa, lin.a_pr, scenario.uncertainty)
    cols = budget.as_dict()
    write_csv(out, ["theta_deg"] + list(cols), zip(nom.thetas_deg, *cols.values()))
    return budget


COMMANDS = {
    "nominal": cmd_nominal,
    "montecarlo": cmd_montecarlo,
    "sensitivity": cmd_sensitivity,
    "budget": cmd_budget,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="radar-uq", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--scenario", required=True, help="scenario JSON file")
    p.add_argument("--out", help="output CSV (defaults to the scenario's 'output')")
    p.add_argument("--seed", type=int, help="override monte_carlo.seed")
    p.add_argument("--runs", type=int, help="override monte_carlo.runs")
    p.add_argument("--workers", type=int, help="threads for Monte Carlo runs")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scenario = load_scenario(args.scenario)
        out = args.out or scenario.output
        if out is None:
            raise ScenarioError("output: no --out given and the scenario has no 'output'")
        if args.runs is not None and args.runs < 1:
            raise ScenarioError(f"--runs: must be >= 1, got {args.runs}")
        if args.seed is not None and args.seed < 0:
            raise ScenarioError(f"--seed: must be >= 0, got {args.seed}")
        if args.workers is not None and args.workers < 1:
            raise ScenarioError(f"--workers: must be >= 1, got {args.workers}")
        if args.command == "montecarlo":
            cmd_montecarlo(scenario, out, runs=args.runs, seed=args.seed, workers=args.workers)
        else:
            COMMANDS[args.command](scenario, out)
    except ScenarioError as exc:
        print(f"radar-uq: invalid scenario: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"radar-uq: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
