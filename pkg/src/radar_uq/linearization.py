"""First-order propagation of aircraft and radar state uncertainty into P_D.

State ordering is fixed throughout:

* aircraft ``x_a = [p_n, p_e, p_d, roll, pitch, yaw]`` (m, rad)
* radar ``x_r = [p_n, p_e, p_d, c_r]`` (m, J m^2/K)

so that ``dP_D ~= A_Pa dx_a + A_Pr dx_r`` and
``sigma_pd^2 = A_Pa C_aa A_Pa^T + A_Pr C_rr A_Pr^T``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .detection import BOLTZMANN, RadarState, _check_pfa, evaluate_detection
from .geometry import AircraftState, d_angles_d_rho, d_range_d_radar_pos, d_rho_d_aircraft_state, \
    dcm_ned_to_body
from .rcs import RcsModel

# (name, covariance, slice) for each independent source, in budget order
_SOURCES = (
    ("aircraft_position", "c_aa", slice(0, 3)),
    ("aircraft_attitude", "c_aa", slice(3, 6)),
    ("radar_position", "c_rr", slice(0, 3)),
    ("radar_constant", "c_rr", slice(3, 4)),
)


def _validate_cov(c, n, name):
    c = np.array(c, dtype=float)
    if c.shape != (n, n):
        raise ValueError(f"{name} must be {n}x{n}, got shape {c.shape}")
    if not np.all(np.isfinite(c)):
        raise ValueError(f"{name} has non-finite entries")
    if not np.allclose(c, c.T, rtol=1e-12, atol=0.0):
        raise ValueError(f"{name} is not symmetric")
    eig = np.linalg.eigvalsh(c)
    if eig.min() < -1e-12 * max(1.0, np.abs(eig).max()):
        raise ValueError(f"{name} is not positive semidefinite (min eigenvalue {eig.min():.3g})")
    c.setflags(write=False)
    return c


@dataclass(frozen=True)
class UncertaintyModel:
    """Aircraft (6x6) and radar (4x4) state covariances.

    The four named sources used by :func:`error_budget` are the diagonal
    blocks: aircraft position ``c_aa[:3,:3]``, aircraft attitude
    ``c_aa[3:,3:]``, radar position ``c_rr[:3,:3]``, radar constant
    ``c_rr[3,3]``.
    """

    c_aa: np.ndarray
    c_rr: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "c_aa", _validate_cov(self.c_aa, 6, "aircraft covariance"))
        object.__setattr__(self, "c_rr", _validate_cov(self.c_rr, 4, "radar covariance"))

    @classmethod
    def from_std(cls, sigma_pa, sigma_ang, sigma_pr, sigma_cr) -> "UncertaintyModel":
        """Diagonal model from standard deviations (m, rad, m, J m^2/K).

        Diagonal entries are the variances, i.e. the squared inputs.
        """
        stds = [sigma_pa, sigma_ang, sigma_pr, sigma_cr]
        if any(not np.isfinite(s) or s < 0 for s in stds):
            raise ValueError(f"standard deviations must be finite and nonnegative, got {stds}")
        c_aa = np.diag([sigma_pa ** 2] * 3 + [sigma_ang ** 2] * 3)
        c_rr = np.diag([sigma_pr ** 2] * 3 + [sigma_cr ** 2])
        return cls(c_aa, c_rr)

    @classmethod
    def zero(cls) -> "UncertaintyModel":
        return cls(np.zeros((6, 6)), np.zeros((4, 4)))

    def scaled(self, factor: float) -> "UncertaintyModel":
        """Covariances multiplied by ``factor`` (std devs scale by its root)."""
        return UncertaintyModel(self.c_aa * factor, self.c_rr * factor)

    def only(self, source: str) -> "UncertaintyModel":
        """Copy with every source except ``source`` switched off."""
        c = {"c_aa": np.zeros((6, 6)), "c_rr": np.zeros((4, 4))}
        for name, which, sl in _SOURCES:
            if name == source:
                c[which][sl, sl] = getattr(self, which)[sl, sl]
                return UncertaintyModel(**c)
        raise KeyError(f"unknown uncertainty source {source!r}")

    def is_block_diagonal(self) -> bool:
        mask_a = np.zeros((6, 6), bool)
        mask_r = np.zeros((4, 4), bool)
        for _, which, sl in _SOURCES:
            (mask_a if which == "c_aa" else mask_r)[sl, sl] = True
        return not (np.any(self.c_aa[~mask_a]) or np.any(self.c_rr[~mask_r]))


#: Presets: aircraft sigma 10 m / 1 deg in all three levels.
PRESETS = {
    "low": UncertaintyModel.from_std(10.0, np.radians(1.0), 10.0, 1.0),
    "medium": UncertaintyModel.from_std(10.0, np.radians(1.0), 100.0, 5.0),
    "high": UncertaintyModel.from_std(10.0, np.radians(1.0), 1000.0, 10.0),
}


@dataclass(frozen=True)
class PdSensitivity:
    pd_nominal: np.ndarray
    a_pa: np.ndarray
    a_pr: np.ndarray
    sigma_pd: np.ndarray | None = None


@dataclass(frozen=True)
class ErrorBudget:
    """Per-source 3-sigma contributions to P_D and their root-sum-square total."""

    aircraft_position: np.ndarray
    aircraft_attitude: np.ndarray
    radar_position: np.ndarray
    radar_constant: np.ndarray
    total: np.ndarray

    SOURCES = tuple(s[0] for s in _SOURCES)

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.SOURCES + ("total",)}


def d_pd_d_snr(snr, p_fa):
    """Derivative of North's P_D with respect to SNR."""
    _check_pfa(p_fa)
    v = np.sqrt(np.asarray(snr, dtype=float) + 0.5)
    return np.exp(-(np.sqrt(-np.log(p_fa)) - v) ** 2) / (2.0 * np.sqrt(np.pi) * v)


def _chain(aircraft, radar, model, p_fa):
    """Shared factors of both Jacobians."""
    det = evaluate_detection(aircraft, radar, model, p_fa)
    c_r = np.asarray(radar.c_r, dtype=float)
    r = det.range
    dpd_ds = d_pd_d_snr(det.snr, p_fa)
    ds_dr = -4.0 * c_r * det.sigma_r / (BOLTZMANN * r ** 5)
    ds_dsigma = c_r / (BOLTZMANN * r ** 4)
    dsig_daz, dsig_del = model.grad(det.angles.azimuth, det.angles.elevation)
    daz_drho, del_drho = d_angles_d_rho(det.rho_body)
    dsig_drho = dsig_daz[..., None] * daz_drho + dsig_del[..., None] * del_drho
    return det, dpd_ds, ds_dr, ds_dsigma, dsig_drho


def _jac_radar(aircraft, radar, det, dpd_ds, ds_dr, ds_dsigma, dsig_drho):
    dr_dpr = d_range_d_radar_pos(aircraft.position, radar.position)
    dsig_dpr = np.einsum("...i,...ij->...j", dsig_drho, dcm_ned_to_body(aircraft.attitude))
    pos = ds_dr[..., None] * dr_dpr + ds_dsigma[..., None] * dsig_dpr
    ds_dc = det.sigma_r / (BOLTZMANN * det.range ** 4)
    return dpd_ds[..., None] * np.concatenate([pos, ds_dc[..., None]], axis=-1)


def _jac_aircraft(aircraft, radar, det, dpd_ds, ds_dr, ds_dsigma, dsig_drho):
    dr_dxa = np.zeros(det.rho_body.shape[:-1] + (6,))
    dr_dxa[..., :3] = -d_range_d_radar_pos(aircraft.position, radar.position)
    dsig_dxa = np.einsum("...i,...ij->...j", dsig_drho, d_rho_d_aircraft_state(aircraft, radar.position))
    return dpd_ds[..., None] * (ds_dr[..., None] * dr_dxa + ds_dsigma[..., None] * dsig_dxa)


def jacobian_radar(aircraft: AircraftState, radar: RadarState, model: RcsModel, p_fa) -> np.ndarray:
    """Row vector ``dP_D/dx_r`` of length 4 (last axis)."""
    det, *factors = _chain(aircraft, radar, model, p_fa)
    return _jac_radar(aircraft, radar, det, *factors)


def jacobian_aircraft(aircraft: AircraftState, radar: RadarState, model: RcsModel, p_fa) -> np.ndarray:
    """Row vector ``dP_D/dx_a`` of length 6 (last axis)."""
    det, *factors = _chain(aircraft, radar, model, p_fa)
    return _jac_aircraft(aircraft, radar, det, *factors)


def sigma_pd(a_pa, a_pr, u: UncertaintyModel) -> np.ndarray:
    """Standard deviation of P_D under the linearized model."""
    a_pa = np.asarray(a_pa, dtype=float)
    a_pr = np.asarray(a_pr, dtype=float)
    var = (np.einsum("...i,ij,...j->...", a_pa, u.c_aa, a_pa)
           + np.einsum("...i,ij,...j->...", a_pr, u.c_rr, a_pr))
    # PSD forms can round to a hair below zero
    return np.sqrt(np.maximum(var, 0.0))


def linearize(aircraft: AircraftState, radar: RadarState, model: RcsModel, p_fa,
              uncertainty: UncertaintyModel | None = None) -> PdSensitivity:
    """Nominal P_D, both Jacobians and (optionally) sigma_pd in one pass."""
    det, *factors = _chain(aircraft, radar, model, p_fa)
    a_pa = _jac_aircraft(aircraft, radar, det, *factors)
    a_pr = _jac_radar(aircraft, radar, det, *factors)
    sig = None if uncertainty is None else sigma_pd(a_pa, a_pr, uncertainty)
    return PdSensitivity(det.pd, a_pa, a_pr, sig)


def error_budget(a_pa, a_pr, u: UncertaintyModel) -> ErrorBudget:
    """3-sigma P_D contribution of each uncertainty source acting alone.

    Requires ``u`` to be block-diagonal over the four sources, which is what
    makes ``total**2 == sum(contribution**2)``.
    """
    if not u.is_block_diagonal():
        raise ValueError("error budget needs covariances that are block-diagonal over the four sources")
    parts = {name: 3.0 * sigma_pd(a_pa, a_pr, u.only(name)) for name in ErrorBudget.SOURCES}
    return ErrorBudget(**parts, total=3.0 * sigma_pd(a_pa, a_pr, u))
