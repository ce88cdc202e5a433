"""Nominal sweeps, Gaussian perturbation sampling and Monte Carlo ensembles.

The aircraft circles the radar at a fixed slant radius. At sweep angle
``theta`` the nominal aircraft sits at ``radar + (R sin theta, R cos theta, 0)``
with its down coordinate pinned, wings level and a fixed heading.

Each Monte Carlo run draws one radar perturbation, held for the whole sweep,
and a fresh aircraft perturbation at every sweep point. Run ``i`` uses its
own generator seeded from ``(seed, i)`` so runs can be computed in any order
or in parallel without changing the result.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from .detection import RadarState, evaluate_detection
from .geometry import AircraftState
from .linearization import UncertaintyModel, linearize, sigma_pd

if TYPE_CHECKING:
    from .scenario import Scenario


@dataclass(frozen=True)
class SweepSpec:
    """Grid of radar detection azimuths (degrees) and the nominal flight condition."""

    theta_start: float = 0.0
    theta_end: float = 180.0
    theta_step: float = 0.5
    radius: float = 500e3
    nominal_down: float = -3000.0
    nominal_yaw: float = np.pi / 2

    def __post_init__(self):
        if not self.theta_step > 0:
            raise ValueError(f"theta_step must be positive, got {self.theta_step!r}")
        if self.theta_start > self.theta_end:
            raise ValueError("theta_start must not exceed theta_end")
        if not self.radius > 0:
            raise ValueError(f"sweep radius must be positive, got {self.radius!r}")

    def thetas_deg(self) -> np.ndarray:
        """Grid angles, both endpoints included when the step divides the span."""
        n = int(np.floor((self.theta_end - self.theta_start) / self.theta_step + 1e-9)) + 1
        return self.theta_start + self.theta_step * np.arange(n)


class NominalSweep(NamedTuple):
    thetas_deg: np.ndarray
    aircraft: AircraftState  # batched over the grid
    radar: RadarState


def nominal_states(spec: SweepSpec, c_r: float, radar_position=(0.0, 0.0, 0.0)) -> NominalSweep:
    theta = np.radians(spec.thetas_deg())
    p_r = np.asarray(radar_position, dtype=float)
    pos = np.stack([
        p_r[0] + spec.radius * np.sin(theta),
        p_r[1] + spec.radius * np.cos(theta),
        np.full_like(theta, spec.nominal_down),
    ], axis=-1)
    att = np.zeros_like(pos)
    att[:, 2] = spec.nominal_yaw
    return NominalSweep(spec.thetas_deg(), AircraftState(pos, att), RadarState(p_r, float(c_r)))


def _cov_factor(c):
    """Matrix ``L`` with ``L L^T = c`` for a PSD ``c``."""
    if not np.any(c - np.diag(np.diag(c))):
        return np.diag(np.sqrt(np.diag(c)))
    w, v = np.linalg.eigh(c)
    return v * np.sqrt(np.clip(w, 0.0, None))


def sample_perturbed(aircraft: AircraftState, radar: RadarState, u: UncertaintyModel,
                     rng: np.random.Generator) -> tuple[AircraftState, RadarState]:
    """Draw one Monte Carlo realization around the nominal states.

    ``aircraft`` may be batched over sweep points; each point gets its own
    draw. ``radar`` gets a single draw. The radar draw is taken first.
    """
    x_r = radar.to_vector()
    x_a = aircraft.to_vector()
    w_r = rng.standard_normal(x_r.shape) @ _cov_factor(u.c_rr).T
    w_a = rng.standard_normal(x_a.shape) @ _cov_factor(u.c_aa).T
    return AircraftState.from_vector(x_a + w_a), RadarState.from_vector(x_r + w_r)


def run_rng(seed: int, run: int) -> np.random.Generator:
    """Independent generator for run ``run`` of a seeded ensemble."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=(int(run),))))


@dataclass(frozen=True)
class McEnsemble:
    """Monte Carlo output over a sweep.

    ``pd_runs`` has shape ``(runs, n_angles)``; all per-angle arrays have
    shape ``(n_angles,)``.
    """

    thetas_deg: np.ndarray
    pd_nominal: np.ndarray
    pd_runs: np.ndarray
    sigma_pd: np.ndarray
    seed: int

    @property
    def pd_error(self) -> np.ndarray:
        """Nominal minus sampled P_D, per run and angle."""
        return self.pd_nominal - self.pd_runs

    @property
    def sample_mean(self) -> np.ndarray:
        return self.pd_runs.mean(axis=0)

    @property
    def sample_std(self) -> np.ndarray:
        ddof = 1 if self.pd_runs.shape[0] > 1 else 0
        return self.pd_runs.std(axis=0, ddof=ddof)

    @property
    def inside_band(self) -> np.ndarray:
        return np.abs(self.pd_error) <= 3.0 * self.sigma_pd

    @property
    def coverage(self) -> float:
        return float(self.inside_band.mean())


def run_monte_carlo(scenario: "Scenario", runs: int | None = None, seed: int | None = None,
                    workers: int | None = None, uncertainty: UncertaintyModel | None = None) -> McEnsemble:
    """Monte Carlo ensemble for a scenario.

    ``runs``, ``seed``, ``workers`` and ``uncertainty`` override the scenario
    values. ``workers > 1`` evaluates runs on a thread pool; results are
    stored by run index and are identical to the serial result.
    """
    runs = scenario.runs if runs is None else runs
    seed = scenario.seed if seed is None else seed
    workers = scenario.workers if workers is None else workers
    u = scenario.uncertainty if uncertainty is None else uncertainty
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")

    nom = nominal_states(scenario.sweep, scenario.radar.c_r, scenario.radar.position)
    lin = linearize(nom.aircraft, nom.radar, scenario.rcs, scenario.p_fa, u)

    def one_run(i):
        a, r = sample_perturbed(nom.aircraft, nom.radar, u, run_rng(seed, i))
        return evaluate_detection(a, r, scenario.rcs, scenario.p_fa).pd

    pd_runs = np.empty((runs, nom.thetas_deg.size))
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for i, row in enumerate(pool.map(one_run, range(runs))):
                pd_runs[i] = row
    else:
        for i in range(runs):
            pd_runs[i] = one_run(i)
    return McEnsemble(nom.thetas_deg, lin.pd_nominal, pd_runs, lin.sigma_pd, int(seed))


def sensitivity_sweep(scenario: "Scenario", levels: dict[str, UncertaintyModel] | None = None
                      ) -> dict[str, np.ndarray]:
    """Linearized 3-sigma P_D over the sweep for each uncertainty level."""
    levels = scenario.levels if levels is None else levels
    nom = nominal_states(scenario.sweep, scenario.radar.c_r, scenario.radar.position)
    lin = linearize(nom.aircraft, nom.radar, scenario.rcs, scenario.p_fa)
    return {name: 3.0 * sigma_pd(lin.a_pa, lin.a_pr, u) for name, u in levels.items()}
