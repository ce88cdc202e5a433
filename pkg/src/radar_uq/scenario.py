"""Scenario files: JSON experiment descriptions with reference defaults.

A minimal scenario is ``{}``; every omitted field takes its reference value.
Angles are given in degrees in the file and converted on load. A complete
file looks like::

    {
      "radar": {"position": [0, 0, 0], "c_r": 167, "p_fa": 1.7e-4},
      "rcs": {"type": "ellipsoid", "a": 0.15, "b": 0.13, "c": 0.21},
      "sweep": {"theta_start_deg": 0, "theta_end_deg": 180, "theta_step_deg": 0.5,
                "radius_m": 500000, "nominal_down_m": -3000, "nominal_yaw_deg": 90},
      "uncertainty": "medium",
      "levels": {"low": "low", "medium": "medium", "high": "high"},
      "monte_carlo": {"runs": 500, "seed": 0, "workers": 1},
      "output": "results/reference.csv"
    }

``radar`` may give hardware parameters instead of ``c_r``::

    "radar": {"params": {"p_av": .., "aperture": .., "t0": .., "loss": ..,
                         "noise_factor": .., "scan_time": .., "search_volume": ..}}

An uncertainty entry is a preset name, a set of standard deviations
``{"sigma_pa_m", "sigma_ang_deg", "sigma_pr_m", "sigma_cr"}`` or explicit
covariances ``{"c_aa": 6x6, "c_rr": 4x4}`` in SI units (m^2, rad^2).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .detection import RadarParams, RadarState
from .linearization import PRESETS, UncertaintyModel
from .montecarlo import SweepSpec
from .rcs import EllipsoidRcs, RcsModel, rcs_from_config

DEFAULTS = {
    "c_r": 167.0,
    "p_fa": 1.7e-4,
    "rcs": {"type": "ellipsoid", "a": 0.15, "b": 0.13, "c": 0.21},
}


class ScenarioError(ValueError):
    """Invalid scenario; the message names the offending field."""


@dataclass(frozen=True)
class Scenario:
    radar: RadarState = field(default_factory=lambda: RadarState(np.zeros(3), DEFAULTS["c_r"]))
    p_fa: float = DEFAULTS["p_fa"]
    rcs: RcsModel = field(default_factory=lambda: EllipsoidRcs(0.15, 0.13, 0.21))
    sweep: SweepSpec = field(default_factory=SweepSpec)
    uncertainty: UncertaintyModel = field(default_factory=lambda: PRESETS["medium"])
    levels: dict = field(default_factory=lambda: dict(PRESETS))
    runs: int = 500
    seed: int = 0
    workers: int = 1
    radar_params: RadarParams | None = None
    output: Path | None = None


def _num(section: dict, key: str, where: str, default=None, positive=False):
    if key not in section:
        if default is None:
            raise ScenarioError(f"{where}.{key}: required field is missing")
        return default
    v = section[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ScenarioError(f"{where}.{key}: expected a finite number, got {v!r}")
    if positive and v <= 0:
        raise ScenarioError(f"{where}.{key}: must be positive, got {v!r}")
    return float(v)


def _int(section: dict, key: str, where: str, default: int, minimum: int):
    v = section.get(key, default)
    if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
        raise ScenarioError(f"{where}.{key}: expected an integer >= {minimum}, got {v!r}")
    return v


def _section(doc: dict, key: str) -> dict:
    v = doc.get(key, {})
    if not isinstance(v, dict):
        raise ScenarioError(f"{key}: expected an object, got {type(v).__name__}")
    return v


def _check_keys(section: dict, allowed: set, where: str):
    extra = set(section) - allowed
    if extra:
        raise ScenarioError(f"{where}: unknown field(s) {sorted(extra)}")


def _vec3(v, where):
    if not (isinstance(v, list) and len(v) == 3 and all(
            isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x) for x in v)):
        raise ScenarioError(f"{where}: expected a list of three finite numbers, got {v!r}")
    return np.array(v, dtype=float)


def parse_uncertainty(spec, where: str = "uncertainty") -> UncertaintyModel:
    if isinstance(spec, str):
        try:
            return PRESETS[spec.lower()]
        except KeyError:
            raise ScenarioError(f"{where}: unknown preset {spec!r}; expected one of {sorted(PRESETS)}") from None
    if not isinstance(spec, dict):
        raise ScenarioError(f"{where}: expected a preset name or an object")
    try:
        if "c_aa" in spec or "c_rr" in spec:
            _check_keys(spec, {"c_aa", "c_rr"}, where)
            if "c_aa" not in spec or "c_rr" not in spec:
                raise ScenarioError(f"{where}: explicit covariances need both c_aa and c_rr")
            return UncertaintyModel(np.array(spec["c_aa"], dtype=float), np.array(spec["c_rr"], dtype=float))
        _check_keys(spec, {"sigma_pa_m", "sigma_ang_deg", "sigma_pr_m", "sigma_cr"}, where)
        return UncertaintyModel.from_std(
            _num(spec, "sigma_pa_m", where),
            math.radians(_num(spec, "sigma_ang_deg", where)),
            _num(spec, "sigma_pr_m", where),
            _num(spec, "sigma_cr", where),
        )
    except ScenarioError:
        raise
    except (ValueError, TypeError) as exc:
        raise ScenarioError(f"{where}: {exc}") from None


def _parse_radar(doc: dict):
    sec = _section(doc, "radar")
    _check_keys(sec, {"position", "c_r", "params", "p_fa"}, "radar")
    position = _vec3(sec["position"], "radar.position") if "position" in sec else np.zeros(3)
    p_fa = _num(sec, "p_fa", "radar", default=DEFAULTS["p_fa"])
    if not 0 < p_fa < 1:
        raise ScenarioError(f"radar.p_fa: must lie in (0, 1), got {p_fa!r}")
    if "c_r" in sec and "params" in sec:
        raise ScenarioError("radar: give either c_r or params, not both")
    params = None
    if "params" in sec:
        p = sec["params"]
        if not isinstance(p, dict):
            raise ScenarioError("radar.params: expected an object")
        names = ("p_av", "aperture", "t0", "loss", "noise_factor", "scan_time", "search_volume")
        _check_keys(p, set(names), "radar.params")
        params = RadarParams(*(_num(p, n, "radar.params", positive=True) for n in names), p_fa=p_fa)
        c_r = params.radar_constant()
    else:
        c_r = _num(sec, "c_r", "radar", default=DEFAULTS["c_r"], positive=True)
    return RadarState(position, c_r), p_fa, params


def _parse_sweep(doc: dict) -> SweepSpec:
    sec = _section(doc, "sweep")
    keys = {"theta_start_deg", "theta_end_deg", "theta_step_deg", "radius_m", "nominal_down_m", "nominal_yaw_deg"}
    _check_keys(sec, keys, "sweep")
    d = SweepSpec()
    step = _num(sec, "theta_step_deg", "sweep", default=d.theta_step)
    if step <= 0:
        raise ScenarioError(f"sweep.theta_step_deg: must be positive, got {step!r}")
    start = _num(sec, "theta_start_deg", "sweep", default=d.theta_start)
    end = _num(sec, "theta_end_deg", "sweep", default=d.theta_end)
    if start > end:
        raise ScenarioError("sweep.theta_end_deg: must not be below theta_start_deg")
    return SweepSpec(
        theta_start=start, theta_end=end, theta_step=step,
        radius=_num(sec, "radius_m", "sweep", default=d.radius, positive=True),
        nominal_down=_num(sec, "nominal_down_m", "sweep", default=d.nominal_down),
        nominal_yaw=math.radians(_num(sec, "nominal_yaw_deg", "sweep", default=math.degrees(d.nominal_yaw))),
    )


def scenario_from_dict(doc: dict, base_dir: Path | None = None) -> Scenario:
    """Validate a parsed scenario document and fill reference defaults."""
    if not isinstance(doc, dict):
        raise ScenarioError("scenario: top level must be a JSON object")
    _check_keys(doc, {"name", "description", "radar", "rcs", "sweep", "uncertainty", "levels",
                      "monte_carlo", "output"}, "scenario")
    radar, p_fa, params = _parse_radar(doc)

    rcs_cfg = doc.get("rcs", DEFAULTS["rcs"])
    if not isinstance(rcs_cfg, dict):
        raise ScenarioError("rcs: expected an object")
    try:
        rcs = rcs_from_config(rcs_cfg)
    except KeyError as exc:
        raise ScenarioError(f"rcs.{exc.args[0]}: required field is missing") from None
    except (ValueError, TypeError) as exc:
        raise ScenarioError(f"rcs: {exc}") from None

    uncertainty = parse_uncertainty(doc.get("uncertainty", "medium"))
    lv = doc.get("levels", {})
    if not isinstance(lv, dict):
        raise ScenarioError("levels: expected an object")
    levels = dict(PRESETS)
    for name, spec in lv.items():
        levels[name] = parse_uncertainty(spec, f"levels.{name}")

    mc = _section(doc, "monte_carlo")
    _check_keys(mc, {"runs", "seed", "workers"}, "monte_carlo")

    output = doc.get("output")
    if output is not None:
        if not isinstance(output, str):
            raise ScenarioError("output: expected a path string")
        output = Path(output)
        if base_dir is not None and not output.is_absolute():
            output = base_dir / output

    return Scenario(
        radar=radar, p_fa=p_fa, rcs=rcs, sweep=_parse_sweep(doc),
        uncertainty=uncertainty, levels=levels,
        runs=_int(mc, "runs", "monte_carlo", 500, 1),
        seed=_int(mc, "seed", "monte_carlo", 0, 0),
        workers=_int(mc, "workers", "monte_carlo", 1, 1),
        radar_params=params, output=output,
    )


def load_scenario(path) -> Scenario:
    """Read and validate a scenario JSON file.

    Raises
    ------
    ScenarioError
        On malformed JSON or any invalid field.
    OSError
        If the file cannot be read.
    """
    path = Path(path)
    text = path.read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: invalid JSON ({exc})") from None
    return scenario_from_dict(doc, base_dir=path.parent)
