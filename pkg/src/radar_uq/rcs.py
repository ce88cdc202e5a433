"""Radar cross section models.

A model maps the line-of-sight angles ``(azimuth, elevation)`` to an RCS in
square meters and supplies the matching gradient. Models are immutable.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np


class RcsModel(ABC):
    """Angle-only radar cross section."""

    @abstractmethod
    def sigma(self, azimuth, elevation) -> np.ndarray:
        """RCS in m^2."""

    @abstractmethod
    def grad(self, azimuth, elevation) -> tuple[np.ndarray, np.ndarray]:
        """Partial derivatives ``(d sigma/d azimuth, d sigma/d elevation)``."""


@dataclass(frozen=True)
class EllipsoidRcs(RcsModel):
    """Ellipsoid aligned with the body axes.

    ``a`` is the forward half-axis, ``b`` the down half-axis and ``c`` the
    right-wing half-axis, all in meters.
    """

    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not np.isfinite(v) or v <= 0:
                raise ValueError(f"ellipsoid axis {name} must be positive, got {v!r}")

    def sigma(self, azimuth, elevation):
        return ellipsoid_sigma(self, azimuth, elevation)

    def grad(self, azimuth, elevation):
        return ellipsoid_grad(self, azimuth, elevation)


@dataclass(frozen=True)
class ConstantRcs(RcsModel):
    sigma0: float

    def __post_init__(self):
        if not np.isfinite(self.sigma0) or self.sigma0 <= 0:
            raise ValueError(f"sigma0 must be positive, got {self.sigma0!r}")

    def sigma(self, azimuth, elevation):
        shape = np.broadcast(np.asarray(azimuth), np.asarray(elevation)).shape
        return np.full(shape, float(self.sigma0))

    def grad(self, azimuth, elevation):
        shape = np.broadcast(np.asarray(azimuth), np.asarray(elevation)).shape
        return np.zeros(shape), np.zeros(shape)


def _denominator(m: EllipsoidRcs, azimuth, elevation):
    sl, cl = np.sin(azimuth), np.cos(azimuth)
    sp, cp = np.sin(elevation), np.cos(elevation)
    return (m.a * sl * cp) ** 2 + (m.b * sl * sp) ** 2 + (m.c * cl) ** 2


def ellipsoid_sigma(m: EllipsoidRcs, azimuth, elevation) -> np.ndarray:
    """Ellipsoid RCS ``pi (abc)^2 / D^2``.

    ``D = (a sin(az) cos(el))^2 + (b sin(az) sin(el))^2 + (c cos(az))^2``.
    """
    d = _denominator(m, np.asarray(azimuth, float), np.asarray(elevation, float))
    return np.pi * (m.a * m.b * m.c) ** 2 / d ** 2


def ellipsoid_grad(m: EllipsoidRcs, azimuth, elevation) -> tuple[np.ndarray, np.ndarray]:
    azimuth = np.asarray(azimuth, float)
    elevation = np.asarray(elevation, float)
    d = _denominator(m, azimuth, elevation)
    scale = -2.0 * np.pi * (m.a * m.b * m.c) ** 2 / d ** 3
    # dD/daz carries -c^2: the c*cos(az) term decreases as az moves off the nose
    kappa = (m.a * np.cos(elevation)) ** 2 + (m.b * np.sin(elevation)) ** 2 - m.c ** 2
    d_az = scale * np.sin(2 * azimuth) * kappa
    d_el = scale * (m.b ** 2 - m.a ** 2) * np.sin(azimuth) ** 2 * np.sin(2 * elevation)
    return d_az, d_el


def rcs_from_config(cfg: dict) -> RcsModel:
    """Build a model from ``{"type": "ellipsoid", "a":..,"b":..,"c":..}`` or
    ``{"type": "constant", "sigma0": ..}``."""
    kind = cfg.get("type")
    if kind == "ellipsoid":
        extra = set(cfg) - {"type", "a", "b", "c"}
        if extra:
            raise ValueError(f"unknown ellipsoid fields: {sorted(extra)}")
        return EllipsoidRcs(float(cfg["a"]), float(cfg["b"]), float(cfg["c"]))
    if kind == "constant":
        extra = set(cfg) - {"type", "sigma0"}
        if extra:
            raise ValueError(f"unknown constant-RCS fields: {sorted(extra)}")
        return ConstantRcs(float(cfg["sigma0"]))
    raise ValueError(f"unknown RCS model type {kind!r}; expected 'ellipsoid' or 'constant'")
