from pathlib import Path

import numpy as np
import pytest

from radar_uq import EllipsoidRcs, Scenario

ROOT = Path(__file__).resolve().parents[1]
DATA = Path(__file__).parent / "data"
REF_JSON = ROOT / "scenarios" / "reference.json"
P_FA = 1.7e-4
REF_RCS = EllipsoidRcs(0.15, 0.13, 0.21)


def fd_step(x):
    return np.maximum(1e-6, 1e-6 * np.abs(x))


def central_diff(f, x):
    """Central-difference Jacobian of ``f`` (vector -> array) at ``x``.

    Returns an array of shape ``f(x).shape + x.shape``.
    """
    x = np.asarray(x, dtype=float)
    h = fd_step(x)
    cols = []
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h[i]
        cols.append((np.asarray(f(x + e)) - np.asarray(f(x - e))) / (2 * h[i]))
    return np.stack(cols, axis=-1)


def five_point_diff(f, x, h):
    """Fourth-order central differences with per-coordinate steps ``h``."""
    x = np.asarray(x, dtype=float)
    cols = []
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h[i]
        cols.append((-np.asarray(f(x + 2 * e)) + 8 * np.asarray(f(x + e)) - 8 * np.asarray(f(x - e))
                     + np.asarray(f(x - 2 * e))) / (12 * h[i]))
    return np.stack(cols, axis=-1)


def fd_rel_err(analytic, numeric):
    analytic = np.asarray(analytic)
    return np.max(np.abs(analytic - numeric) / np.maximum(1.0, np.abs(analytic)))


@pytest.fixture
def reference():
    return Scenario()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
