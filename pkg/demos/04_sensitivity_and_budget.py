# %% [markdown]
# # How much does radar state knowledge matter?
#
# Three uncertainty levels share the same aircraft uncertainty (10 m, 1 deg)
# and differ only in radar position and radar constant knowledge. The error
# budget then splits the Medium 3-sigma band into its four sources.

# %%
import numpy as np

from radar_uq import Scenario, error_budget, linearize, nominal_states, sensitivity_sweep
from _plot import figure

sc = Scenario()
curves = sensitivity_sweep(sc)
th = sc.sweep.thetas_deg()
for name, c in curves.items():
    print(f"{name:>6}: max 3 sigma_pd {c.max():.4f} at {th[np.argmax(c)]:g} deg")

# %%
nom = nominal_states(sc.sweep, sc.radar.c_r)
lin = linearize(nom.aircraft, nom.radar, sc.rcs, sc.p_fa)
budget = error_budget(lin.a_pa, lin.a_pr, sc.uncertainty)
k = int(np.argmax(budget.total))
print(f"budget at {th[k]:g} deg (3 sigma):")
for name, col in budget.as_dict().items():
    print(f"  {name:>18}: {col[k]:.4f}")


# %%
def draw(ax):
    for name, c in curves.items():
        ax.plot(th, c, label=name)
    ax.set_xlabel("theta (deg)")
    ax.set_ylabel("3 sigma_pd")
    ax.legend()


figure("04_sensitivity", draw)
