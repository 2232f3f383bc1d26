"""Tilted Bell tests against adversaries who know something about the settings.

M1 (M2) measures how well the hidden variable tells Alice's (Bob's) settings
apart. The maximal quantum violation stays conclusive only below a critical
amount of measurement dependence.
"""
import numpy as np

from mdlcert import MDMeasures, PRESETS, TiltedParams, adversary_model, bruteforce_md_tilted_max, md_measures, md_tilted_bound
from mdlcert.mdl_models import settings_marginal
from mdlcert.scan import critical_M_curve, md_region_grid

c = critical_M_curve([1, 1.5, 2, 3, 5])
print("alpha   symmetric  alice_only  bob_only")
for row in zip(c["alpha"], c["symmetric"], c["alice_only"], c["bob_only"]):
    print("  ".join(f"{v:8.5f}" for v in row))

# a two-valued hidden variable can bias the settings while keeping p(xy) flat
for k, angles in PRESETS.items():
    m = adversary_model(angles)
    rep = md_measures(m)
    print(f"\npreset {k}: p(xy) = {np.round(settings_marginal(m).ravel(), 4)}")
    print(f"  M = {rep.M:.4f}, M1 = {rep.M1:.4f}, M2 = {rep.M2:.4f}, guessing probability F = {rep.F:.4f}")

# the closed-form bound against brute force over deterministic models;
# four hidden values are enough to reach it
t = TiltedParams(1.0, 0.0)
for m1, m2 in ((0.0, 0.0), (0.1, 0.3), (0.3, 0.1), (0.5, 0.5), (2, 2)):
    cap = MDMeasures(m1, m2)
    print(f"M1={m1}, M2={m2}: bound {md_tilted_bound(t, cap):.4f}, brute force {bruteforce_md_tilted_max(t, cap, 4):.4f}")

# (M1, M2) regions at the values marked in the alpha = 1, beta = 8 plot
grid = np.linspace(0, 2, 21)
reg = md_region_grid(TiltedParams(1, 8), [10.83, 11.66, 11.83, 12], grid)
for I, lab in zip(reg.I_values, reg.nonlocal_):
    print(f"I = {I:5.2f}: {lab.mean():.1%} of the (M1, M2) square is MD-nonlocal")
