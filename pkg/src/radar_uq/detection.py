"""Single-pulse detection chain: radar constant, SNR, and North's P_D.

``P_D ~= 0.5 * erfc(sqrt(-ln P_fa) - sqrt(S + 0.5))`` with
``S = c_r * sigma_r / (k R^4)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .geometry import AircraftState, RcsAngles, rcs_angles, relative_position_body, slant_range
from .rcs import RcsModel

#: Boltzmann's constant in J/K, kept at three significant figures.
BOLTZMANN = 1.38e-23


@dataclass(frozen=True)
class RadarParams:
    """Surveillance radar hardware parameters.

    Attributes
    ----------
    p_av : average transmitted power [W]
    aperture : antenna aperture [m^2]
    t0 : system temperature [K]
    loss : system loss factor (linear, >0)
    noise_factor : receiver noise factor (linear, >0)
    scan_time : scan time [s]
    search_volume : search volume [sr]
    p_fa : probability of false alarm
    """

    p_av: float
    aperture: float
    t0: float
    loss: float
    noise_factor: float
    scan_time: float
    search_volume: float
    p_fa: float = 1.7e-4

    def __post_init__(self):
        for name in ("p_av", "aperture", "t0", "loss", "noise_factor", "scan_time", "search_volume"):
            v = getattr(self, name)
            if not np.isfinite(v) or v <= 0:
                raise ValueError(f"radar parameter {name} must be positive, got {v!r}")
        _check_pfa(self.p_fa)

    def radar_constant(self) -> float:
        return radar_constant_surveillance(self)


@dataclass(frozen=True)
class RadarState:
    """Radar NED position and consolidated radar constant (J m^2 / K).

    Stacked state vector: ``[p_n, p_e, p_d, c_r]``.
    """

    position: np.ndarray
    c_r: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float))
        object.__setattr__(self, "c_r", np.asarray(self.c_r, dtype=float))
        if self.position.shape[-1:] != (3,):
            raise ValueError("radar position must have a trailing axis of length 3")

    @classmethod
    def from_vector(cls, x) -> "RadarState":
        x = np.asarray(x, dtype=float)
        return cls(x[..., :3], x[..., 3])

    def to_vector(self) -> np.ndarray:
        c = np.broadcast_to(self.c_r, self.position.shape[:-1])
        return np.concatenate([self.position, c[..., None]], axis=-1)


@dataclass(frozen=True)
class DetectionPoint:
    """Every intermediate of one detection evaluation."""

    rho_body: np.ndarray
    range: np.ndarray
    angles: RcsAngles
    sigma_r: np.ndarray
    snr: np.ndarray
    pd: np.ndarray


def _check_pfa(p_fa):
    if not np.all((np.asarray(p_fa) > 0) & (np.asarray(p_fa) < 1)):
        raise ValueError(f"probability of false alarm must lie in (0, 1), got {p_fa!r}")


def erfc(z):
    """Complementary error function, ``1 - 2/sqrt(pi) * int_0^z exp(-t^2) dt``."""
    return special.erfc(z)


def pd_from_snr(snr, p_fa):
    """Probability of detection from SNR (North's approximation)."""
    _check_pfa(p_fa)
    snr = np.asarray(snr, dtype=float)
    if np.any(snr < 0):
        raise ValueError("SNR must be nonnegative")
    return 0.5 * erfc(np.sqrt(-np.log(p_fa)) - np.sqrt(snr + 0.5))


def snr(c_r, sigma_r, rng):
    """Signal-to-noise ratio ``c_r * sigma_r / (k R^4)``."""
    rng = np.asarray(rng, dtype=float)
    if np.any(rng <= 0):
        raise ValueError("range must be positive")
    return np.asarray(c_r) * np.asarray(sigma_r) / (BOLTZMANN * rng ** 4)


def radar_constant_surveillance(p: RadarParams) -> float:
    """Consolidated surveillance radar constant ``P_av A T_sc / (16 T0 L F Omega)``."""
    return p.p_av * p.aperture / (16.0 * p.t0 * p.loss * p.noise_factor) * p.scan_time / p.search_volume


def evaluate_detection(aircraft: AircraftState, radar: RadarState, model: RcsModel,
                       p_fa: float) -> DetectionPoint:
    """Run the full detection chain from aircraft pose and radar state to P_D.

    Inputs may be batched; the outputs broadcast accordingly.
    """
    rho = relative_position_body(aircraft, radar.position)
    rng = slant_range(aircraft.position, radar.position)
    angles = rcs_angles(rho)
    sigma_r = model.sigma(angles.azimuth, angles.elevation)
    s = snr(radar.c_r, sigma_r, rng)
    return DetectionPoint(rho, rng, angles, sigma_r, s, pd_from_snr(s, p_fa))
