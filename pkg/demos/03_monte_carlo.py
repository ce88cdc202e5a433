# %% [markdown]
# # Monte Carlo against the linearized band
#
# Each run perturbs the radar once and the aircraft at every sweep point,
# then recomputes P_D. If the first-order model is adequate, about 99.7% of
# the sampled errors should land within +-3 sigma_pd.

# %%
import numpy as np

from radar_uq import Scenario, run_monte_carlo
from _plot import figure

ens = run_monte_carlo(Scenario(), runs=500, seed=0)
print(f"runs {ens.pd_runs.shape[0]}, angles {ens.pd_runs.shape[1]}")
print(f"fraction inside +-3 sigma_pd: {ens.coverage:.4f}")

# %%
mask = ens.sigma_pd > 0.005
ratio = ens.sample_std[mask] / ens.sigma_pd[mask]
print(f"sample std / linearized sigma_pd: min {ratio.min():.3f}, median {np.median(ratio):.3f}, max {ratio.max():.3f}")


# %%
def draw(ax):
    ax.plot(ens.thetas_deg, ens.pd_error[:50].T, color="0.6", lw=0.4)
    ax.plot(ens.thetas_deg, 3 * ens.sigma_pd, "r", ens.thetas_deg, -3 * ens.sigma_pd, "r")
    ax.set_xlabel("theta (deg)")
    ax.set_ylabel("P_D error")


figure("03_monte_carlo", draw)
