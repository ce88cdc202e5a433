# %% [markdown]
# # Checking the analytic Jacobians
#
# The uncertainty model is first order, so everything rests on the partial
# derivatives of P_D with respect to the aircraft state (position, roll,
# pitch, yaw) and the radar state (position, radar constant). Here we compare
# them with finite differences at one point on the circle and then watch the
# linearization residual shrink quadratically.

# %%
import numpy as np

from radar_uq import AircraftState, RadarState, Scenario, evaluate_detection, linearize

sc = Scenario()
t = np.radians(45)
aircraft = AircraftState([5e5 * np.sin(t), 5e5 * np.cos(t), -3000], [0, 0, np.pi / 2])
radar = RadarState([0, 0, 0], sc.radar.c_r)
lin = linearize(aircraft, radar, sc.rcs, sc.p_fa)


def pd(x_a, x_r):
    return evaluate_detection(AircraftState.from_vector(x_a), RadarState.from_vector(x_r), sc.rcs, sc.p_fa).pd


# %%
x_a, x_r = aircraft.to_vector(), radar.to_vector()
steps_a = np.array([50.0] * 3 + [1e-4] * 3)
steps_r = np.array([50.0] * 3 + [1e-2])
names_a = ["north", "east", "down", "roll", "pitch", "yaw"]
names_r = ["north", "east", "down", "c_r"]
for label, names, x, steps, grad, which in (("aircraft", names_a, x_a, steps_a, lin.a_pa, 0),
                                             ("radar", names_r, x_r, steps_r, lin.a_pr, 1)):
    print(f"{label} Jacobian")
    for i, name in enumerate(names):
        e = np.zeros_like(x)
        e[i] = steps[i]
        args_p = (x + e, x_r) if which == 0 else (x_a, x + e)
        args_m = (x - e, x_r) if which == 0 else (x_a, x - e)
        fd = (pd(*args_p) - pd(*args_m)) / (2 * steps[i])
        print(f"  {name:>6}: analytic {grad[i]: .6e}   finite diff {fd: .6e}")

# %% [markdown]
# The residual P_D(x + eps d) - P_D(x) - eps J d should fall by ~100x for
# each 10x cut in eps.

# %%
rng = np.random.default_rng(1)
d_a = rng.normal(size=6) * np.array([10, 10, 10, 0.017, 0.017, 0.017])
d_r = rng.normal(size=4) * np.array([100, 100, 100, 5])
for eps in (1.0, 0.1, 0.01):
    res = pd(x_a + eps * d_a, x_r + eps * d_r) - lin.pd_nominal - eps * (lin.a_pa @ d_a + lin.a_pr @ d_r)
    print(f"eps {eps:5.2f}  residual {abs(res):.3e}")
