"""Frames, kinematic quantities and geometric Jacobians.

Conventions
-----------
Positions are NED (north, east, down) in meters. Attitude is the ZYX Euler
triple ``(roll, pitch, yaw)`` in radians. The body frame has x out the nose,
y out the right wing and z out the belly.

Every function accepts arrays with arbitrary leading batch dimensions, so a
whole sweep of states can be pushed through in one call. Vectors live in the
trailing axis (``(..., 3)``), matrices in the trailing two (``(..., 3, 3)``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

#: Radar closer than this to the body z-axis (or to the aircraft) is singular.
SINGULAR_TOL = 1e-9


class GeometryError(ValueError):
    """Raised for singular geometry (gimbal lock, degenerate line of sight)."""


@dataclass(frozen=True)
class AircraftState:
    """Aircraft pose: NED position and ZYX Euler angles.

    Both fields may carry leading batch dimensions as long as they agree.
    The stacked state vector is ``[p_n, p_e, p_d, roll, pitch, yaw]``.
    """

    position: np.ndarray
    attitude: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float))
        object.__setattr__(self, "attitude", np.asarray(self.attitude, dtype=float))
        if self.position.shape[-1:] != (3,) or self.attitude.shape[-1:] != (3,):
            raise ValueError("position and attitude must have a trailing axis of length 3")

    @classmethod
    def from_vector(cls, x) -> "AircraftState":
        x = np.asarray(x, dtype=float)
        return cls(x[..., :3], x[..., 3:6])

    def to_vector(self) -> np.ndarray:
        pos, att = np.broadcast_arrays(self.position, self.attitude)
        return np.concatenate([pos, att], axis=-1)


class RcsAngles(NamedTuple):
    """Line-of-sight angles to the radar, measured in the body frame (rad)."""

    azimuth: np.ndarray
    elevation: np.ndarray


def _check_pitch(pitch):
    if np.any(np.abs(pitch) >= np.pi / 2 - SINGULAR_TOL):
        raise GeometryError("pitch at +/-90 deg: Euler angles are gimbal-locked")
    if not np.all(np.isfinite(pitch)):
        raise ValueError("attitude must be finite")


def _trig(att):
    att = np.asarray(att, dtype=float)
    _check_pitch(att[..., 1])
    roll, pitch, yaw = att[..., 0], att[..., 1], att[..., 2]
    return (np.cos(roll), np.sin(roll), np.cos(pitch), np.sin(pitch),
            np.cos(yaw), np.sin(yaw))


def _stack(rows):
    return np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)


def dcm_ned_to_body(att) -> np.ndarray:
    """NED-to-body direction cosine matrix for ZYX Euler angles.

    Parameters
    ----------
    att : array_like, shape (..., 3)
        Roll, pitch, yaw in radians.

    Returns
    -------
    ndarray, shape (..., 3, 3)
        Rotation taking NED components to body components. The first row is
        ``[cos(pitch)cos(yaw), cos(pitch)sin(yaw), -sin(pitch)]``.

    Raises
    ------
    GeometryError
        If pitch is at +/-90 deg.
    """
    cr, sr, cp, sp, cy, sy = _trig(att)
    return _stack([
        [cp * cy, cp * sy, -sp],
        [sr * sp * cy - cr * sy, sr * sp * sy + cr * cy, sr * cp],
        [cr * sp * cy + sr * sy, cr * sp * sy - sr * cy, cr * cp],
    ])


def dcm_attitude_partials(att) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Entrywise derivatives of :func:`dcm_ned_to_body` w.r.t. roll, pitch, yaw."""
    cr, sr, cp, sp, cy, sy = _trig(att)
    zero = np.zeros_like(cr)
    d_roll = _stack([
        [zero, zero, zero],
        [cr * sp * cy + sr * sy, cr * sp * sy - sr * cy, cr * cp],
        [-sr * sp * cy + cr * sy, -sr * sp * sy - cr * cy, -sr * cp],
    ])
    d_pitch = _stack([
        [-sp * cy, -sp * sy, -cp],
        [sr * cp * cy, sr * cp * sy, -sr * sp],
        [cr * cp * cy, cr * cp * sy, -cr * sp],
    ])
    d_yaw = _stack([
        [-cp * sy, cp * cy, zero],
        [-sr * sp * sy - cr * cy, sr * sp * cy - cr * sy, zero],
        [-cr * sp * sy + sr * cy, cr * sp * cy + sr * sy, zero],
    ])
    return d_roll, d_pitch, d_yaw


def _matvec(m, v):
    return np.einsum("...ij,...j->...i", m, v)


def relative_position_body(aircraft: AircraftState, radar_pos) -> np.ndarray:
    """Radar position relative to the aircraft, expressed in body axes."""
    delta = np.asarray(radar_pos, dtype=float) - aircraft.position
    return _matvec(dcm_ned_to_body(aircraft.attitude), delta)


def slant_range(p_a, p_r) -> np.ndarray:
    """Euclidean distance between aircraft and radar."""
    return np.linalg.norm(np.asarray(p_r, dtype=float) - np.asarray(p_a, dtype=float), axis=-1)


def rcs_angles(rho_b) -> RcsAngles:
    """Azimuth and elevation of the radar seen from the aircraft.

    Azimuth uses the four-quadrant arctangent and lies in (-pi, pi].
    Elevation is positive when the radar is below the aircraft (body +z).
    """
    rho_b = np.asarray(rho_b, dtype=float)
    x, y, z = rho_b[..., 0], rho_b[..., 1], rho_b[..., 2]
    horiz = np.hypot(x, y)
    if np.any(horiz < SINGULAR_TOL):
        raise GeometryError("radar lies on the body z-axis; azimuth is undefined")
    return RcsAngles(np.arctan2(y, x), np.arctan2(z, horiz))


def d_range_d_radar_pos(p_a, p_r) -> np.ndarray:
    """Gradient of range w.r.t. radar position (unit vector aircraft -> radar).

    The gradient w.r.t. aircraft position is its negation.
    """
    delta = np.asarray(p_r, dtype=float) - np.asarray(p_a, dtype=float)
    r = np.linalg.norm(delta, axis=-1, keepdims=True)
    if np.any(r < SINGULAR_TOL):
        raise GeometryError("aircraft and radar positions coincide")
    return delta / r


def d_angles_d_rho(rho_b) -> tuple[np.ndarray, np.ndarray]:
    """Gradients of (azimuth, elevation) w.r.t. the body-frame relative position."""
    rho_b = np.asarray(rho_b, dtype=float)
    x, y, z = rho_b[..., 0], rho_b[..., 1], rho_b[..., 2]
    h2 = x * x + y * y
    if np.any(h2 < SINGULAR_TOL ** 2):
        raise GeometryError("radar lies on the body z-axis; azimuth is undefined")
    h = np.sqrt(h2)
    r2 = h2 + z * z
    alpha = r2 * h
    d_az = np.stack([-y / h2, x / h2, np.zeros_like(x)], axis=-1)
    d_el = np.stack([-x * z / alpha, -y * z / alpha, h / r2], axis=-1)
    return d_az, d_el


def d_rho_d_radar_pos(att) -> np.ndarray:
    return dcm_ned_to_body(att)


def d_rho_d_aircraft_state(aircraft: AircraftState, p_r) -> np.ndarray:
    """Jacobian of the body-frame relative position w.r.t. the aircraft state.

    Returns
    -------
    ndarray, shape (..., 3, 6)
        Columns 0-2: ``-R_nb``. Columns 3-5: each DCM partial applied to the
        NED offset ``p_r - p_a``.
    """
    delta = np.asarray(p_r, dtype=float) - aircraft.position
    dcm = dcm_ned_to_body(aircraft.attitude)
    partials = dcm_attitude_partials(aircraft.attitude)
    att_cols = np.stack([_matvec(d, delta) for d in partials], axis=-1)
    dcm, att_cols = np.broadcast_arrays(dcm, att_cols)
    return np.concatenate([-dcm, att_cols], axis=-1)
