# %% [markdown]
# # Detection probability around a circling target
#
# An ellipsoidal target flies a 500 km circle around the radar at 3 km
# altitude, heading east. Its radar cross section depends on where the radar
# sits in the body frame, so P_D changes as the aircraft moves around the circle.

# %%
import numpy as np

from radar_uq import Scenario, evaluate_detection, nominal_states, pd_from_snr
from _plot import figure

sc = Scenario()
nom = nominal_states(sc.sweep, sc.radar.c_r)
det = evaluate_detection(nom.aircraft, nom.radar, sc.rcs, sc.p_fa)

# %% [markdown]
# Broadside (90 deg) shows the large a-c face of the ellipsoid; head-on
# (0 and 180 deg) shows the small a-b face.

# %%
for theta in (0, 45, 90, 135, 180):
    k = int(np.argmin(np.abs(nom.thetas_deg - theta)))
    print(f"theta {theta:5.1f} deg  sigma_r {det.sigma_r[k]:.4f} m^2  S {det.snr[k]:6.2f}  P_D {det.pd[k]:.4f}")

# %% [markdown]
# The detection threshold: P_D = 0.5 where S = -ln(P_fa) - 0.5.

# %%
s_half = -np.log(sc.p_fa) - 0.5
print(f"P_D({s_half:.3f}) = {pd_from_snr(s_half, sc.p_fa):.6f}")
k = int(np.argmin(np.abs(det.pd - 0.5)))
print(f"closest to threshold on the circle: {nom.thetas_deg[k]:g} deg, P_D {det.pd[k]:.4f}")

# %%
figure("01_nominal_pd", lambda ax: (ax.plot(nom.thetas_deg, det.pd), ax.set_xlabel("theta (deg)"),
                                    ax.set_ylabel("nominal P_D")))
