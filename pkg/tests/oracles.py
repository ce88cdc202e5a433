"""Independent high-precision reference computations shared by the tests."""
import mpmath

mpmath.mp.dps = 40


def erfc_quadrature(z):
    """Quadrature of the defining integral of erfc."""
    return 1 - 2 / mpmath.sqrt(mpmath.pi) * mpmath.quad(lambda t: mpmath.exp(-t * t), [0, z])


def hand_pd(theta_deg, c_r=167.0, radius=5e5, down=-3000.0):
    """Detection probability for the circling geometry, worked out by hand.

    With heading east, body x points east and body y points south, so the
    radar (at the origin) sits at azimuth 180 - theta and elevation
    atan(3000 / R) seen from the aircraft. Returns ``(sigma_r, S, P_D)``.
    """
    mp = mpmath
    th = mp.radians(theta_deg)
    a, b, c = mp.mpf("0.15"), mp.mpf("0.13"), mp.mpf("0.21")
    lam = mp.pi - th
    phi = mp.atan(-down / radius)
    den = (a * mp.sin(lam) * mp.cos(phi)) ** 2 + (b * mp.sin(lam) * mp.sin(phi)) ** 2 + (c * mp.cos(lam)) ** 2
    sigma = mp.pi * (a * b * c) ** 2 / den ** 2
    r = mp.sqrt(radius ** 2 + down ** 2)
    s = c_r * sigma / (mp.mpf("1.38e-23") * r ** 4)
    pd = 0.5 * erfc_quadrature(mp.sqrt(-mp.log(mp.mpf("1.7e-4"))) - mp.sqrt(s + 0.5))
    return float(sigma), float(s), float(pd)
