import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from radar_uq import (BOLTZMANN, AircraftState, ConstantRcs, RadarParams, RadarState, erfc, evaluate_detection,
                      pd_from_snr, radar_constant_surveillance, rcs_angles, relative_position_body, slant_range,
                      snr)

from conftest import P_FA, REF_RCS
from oracles import erfc_quadrature, hand_pd


def test_erfc_basic():
    assert erfc(0.0) == 1.0
    assert erfc(1.0) == pytest.approx(0.157299207050285, abs=1e-15)


@pytest.mark.parametrize("z", [-5.0, -2.2, -0.3, 0.0, 1e-8, 0.5, 0.84375, 1.0, 1.25, 2.0, 2.857, 3.5, 6.0])
def test_erfc_against_quadrature(z):
    assert abs(erfc(z) - float(erfc_quadrature(z))) <= 1e-12


@given(st.floats(-20, 20))
def test_erfc_reflection(z):
    assert erfc(-z) + erfc(z) == pytest.approx(2.0, abs=1e-15)


def test_pd_half_at_threshold():
    s = -np.log(P_FA) - 0.5
    assert abs(pd_from_snr(s, P_FA) - 0.5) <= 1e-12


def test_pd_asymptote():
    assert abs(pd_from_snr(1e6, P_FA) - 1.0) <= 1e-12


def test_pd_at_snr20():
    # erfc oracle by quadrature
    u = mpmath.sqrt(-mpmath.log(mpmath.mpf("1.7e-4")))
    expected = float(0.5 * erfc_quadrature(u - mpmath.sqrt(20.5)))
    assert pd_from_snr(20.0, P_FA) == pytest.approx(expected, abs=1e-12)
    assert pd_from_snr(20.0, P_FA) == pytest.approx(0.9873, abs=5e-5)


@given(st.floats(0, 1e9), st.floats(0, 1e9))
def test_pd_monotone_in_snr(s1, s2):
    lo, hi = sorted((s1, s2))
    p_lo, p_hi = pd_from_snr(lo, P_FA), pd_from_snr(hi, P_FA)
    assert 0 < p_lo <= p_hi <= 1
    # strict where the complement is still representable
    if hi > lo and 0.5 * erfc(np.sqrt(hi + 0.5) - np.sqrt(-np.log(P_FA))) > 1e-15 and hi - lo > 1e-6 * max(hi, 1.0):
        assert p_hi > p_lo


def test_pd_monotone_dense_grid():
    s = np.linspace(0, 60, 20001)
    p = pd_from_snr(s, P_FA)
    assert np.all(np.diff(p) > 0)
    assert np.all((p > 0) & (p < 1))


def test_pd_monotone_in_pfa():
    pfa = np.logspace(-12, -0.01, 200)
    p = pd_from_snr(9.0, pfa)
    assert np.all(np.diff(p) > 0)


def test_pd_no_nan_over_range():
    s = np.concatenate([[0.0], np.logspace(-6, 9, 1000)])
    p = pd_from_snr(s, P_FA)
    assert np.all(np.isfinite(p))
    assert np.all((p > 0) & (p <= 1))


@pytest.mark.parametrize("pfa", [0.0, 1.0, -0.1, 1.5])
def test_pd_bad_pfa(pfa):
    with pytest.raises(ValueError):
        pd_from_snr(5.0, pfa)


def test_snr_homogeneity():
    base = snr(100.0, 0.05, 2e5)
    assert snr(200.0, 0.05, 2e5) == pytest.approx(2 * base, rel=1e-15)
    assert snr(100.0, 0.05, 4e5) == pytest.approx(base / 16, rel=1e-15)


def test_snr_reference_45deg():
    r = np.hypot(5e5, 3000)
    assert snr(167.0, 0.0475, r) == pytest.approx(167 * 0.0475 / (1.38e-23 * r ** 4), rel=1e-14)
    assert snr(167.0, 0.0475, r) == pytest.approx(9.20, abs=0.01)


def test_zero_rcs_limit():
    assert snr(167.0, 0.0, 1e5) == 0.0
    assert pd_from_snr(0.0, P_FA) == 0.5 * erfc(np.sqrt(-np.log(P_FA)) - np.sqrt(0.5))


def test_snr_bad_range():
    with pytest.raises(ValueError):
        snr(1.0, 1.0, 0.0)


def test_boltzmann_as_printed():
    assert BOLTZMANN == 1.38e-23


def test_radar_constant_unit():
    p = RadarParams(p_av=16.0, aperture=12.0, t0=3.0, loss=2.0, noise_factor=2.0, scan_time=5.0, search_volume=5.0)
    assert radar_constant_surveillance(p) == pytest.approx(1.0, rel=1e-15)
    assert p.radar_constant() == radar_constant_surveillance(p)


def test_radar_constant_homogeneity(rng):
    names = ["p_av", "aperture", "t0", "loss", "noise_factor", "scan_time", "search_volume"]
    power = dict(p_av=1, aperture=1, t0=-1, loss=-1, noise_factor=-1, scan_time=1, search_volume=-1)
    for _ in range(20):
        vals = dict(zip(names, rng.uniform(0.1, 10, len(names))))
        base = radar_constant_surveillance(RadarParams(**vals))
        for n in names:
            k = rng.uniform(0.5, 3)
            scaled = RadarParams(**{**vals, n: vals[n] * k})
            assert radar_constant_surveillance(scaled) == pytest.approx(base * k ** power[n], rel=1e-12)


def test_radar_params_validation():
    with pytest.raises(ValueError):
        RadarParams(0, 1, 1, 1, 1, 1, 1)
    with pytest.raises(ValueError):
        RadarParams(1, 1, 1, 1, 1, 1, 1, p_fa=2.0)


def circling_state(theta_deg, radius=5e5, down=-3000.0):
    t = np.radians(theta_deg)
    return AircraftState([radius * np.sin(t), radius * np.cos(t), down], [0, 0, np.pi / 2])


RADAR = RadarState([0, 0, 0], 167.0)


def test_evaluate_detection_45deg():
    det = evaluate_detection(circling_state(45), RADAR, REF_RCS, P_FA)
    sigma, s, pd = hand_pd(45)
    assert np.sin(det.angles.azimuth) ** 2 == pytest.approx(0.5, rel=1e-9)
    assert det.sigma_r == pytest.approx(sigma, rel=1e-10)
    assert det.snr == pytest.approx(s, rel=1e-10)
    assert det.pd == pytest.approx(pd, abs=1e-12)
    assert det.sigma_r == pytest.approx(0.0475, abs=5e-4)
    assert det.snr == pytest.approx(9.2, abs=0.05)
    assert det.pd == pytest.approx(0.59, abs=0.01)


def test_evaluate_detection_0deg():
    det = evaluate_detection(circling_state(0), RADAR, REF_RCS, P_FA)
    sigma, _, pd = hand_pd(0)
    assert abs(np.sin(det.angles.azimuth)) < 1e-12
    assert det.sigma_r == pytest.approx(sigma, rel=1e-10)
    assert det.sigma_r == pytest.approx(0.02709, abs=1e-5)
    assert det.pd == pytest.approx(pd, abs=1e-12)
    assert det.pd == pytest.approx(0.22, abs=0.01)


def test_constant_rcs_threshold():
    r = np.hypot(5e5, 3000)
    target_s = -np.log(P_FA) - 0.5
    sigma0 = target_s * BOLTZMANN * r ** 4 / 167.0
    det = evaluate_detection(circling_state(30), RADAR, ConstantRcs(sigma0), P_FA)
    assert abs(det.pd - 0.5) <= 1e-12


def test_detection_point_consistent(rng):
    for _ in range(20):
        a = AircraftState(rng.uniform(-2e5, 2e5, 3), rng.uniform(-0.5, 0.5, 3))
        r = RadarState(rng.uniform(-1e4, 1e4, 3), rng.uniform(50, 500))
        det = evaluate_detection(a, r, REF_RCS, P_FA)
        np.testing.assert_allclose(det.rho_body, relative_position_body(a, r.position))
        assert np.linalg.norm(det.rho_body) == pytest.approx(det.range, rel=1e-12)
        assert det.range == slant_range(a.position, r.position)
        np.testing.assert_allclose(rcs_angles(det.rho_body), det.angles)
        assert det.sigma_r == REF_RCS.sigma(*det.angles)
        assert det.snr == pytest.approx(snr(r.c_r, det.sigma_r, det.range), rel=1e-15)
        assert det.pd == pd_from_snr(det.snr, P_FA)
        assert 0 <= det.pd <= 1 and det.snr >= 0 and det.range > 0


def test_translation_invariance(rng):
    for _ in range(50):
        a = AircraftState(rng.uniform(-5e5, 5e5, 3), rng.uniform(-0.5, 0.5, 3))
        r = RadarState(rng.uniform(-1e4, 1e4, 3), 167.0)
        shift = rng.uniform(-1e5, 1e5, 3)
        p0 = evaluate_detection(a, r, REF_RCS, P_FA).pd
        p1 = evaluate_detection(AircraftState(a.position + shift, a.attitude),
                                RadarState(r.position + shift, r.c_r), REF_RCS, P_FA).pd
        assert abs(p1 - p0) <= 1e-12


def test_pd_near_half_somewhere():
    pds = [evaluate_detection(circling_state(t), RADAR, REF_RCS, P_FA).pd for t in np.arange(0, 180.5, 0.5)]
    assert min(abs(p - 0.5) for p in pds) < 0.2


def test_batched_evaluation_matches_scalar():
    thetas = np.array([0.0, 30.0, 45.0, 120.0])
    t = np.radians(thetas)
    pos = np.column_stack([5e5 * np.sin(t), 5e5 * np.cos(t), np.full(4, -3000.0)])
    att = np.tile([0, 0, np.pi / 2], (4, 1))
    batch = evaluate_detection(AircraftState(pos, att), RADAR, REF_RCS, P_FA).pd
    single = [evaluate_detection(circling_state(th), RADAR, REF_RCS, P_FA).pd for th in thetas]
    np.testing.assert_allclose(batch, single, rtol=0, atol=1e-15)
