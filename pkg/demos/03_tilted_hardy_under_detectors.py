"""A fixed quantum behavior under imperfect detectors.

The tilted-Hardy configuration at theta ~ 1.13557 is mapped through the
detector channel over a grid of (eta, delta). The sign of the four-outcome
test marks where nonlocality survives.
"""
import numpy as np

from mdlcert import obs3_polynomial, theta_to_w
from mdlcert.scan import zrlh_critical_eta, zrlh_detector_region

theta = 1.13557
print(f"theta = {theta}, tilt w = {theta_to_w(theta):.6f}")
print(f"critical efficiency without dark counts: {zrlh_critical_eta(theta):.6f}")

etas = np.linspace(0.9, 1.0, 11)
deltas = np.linspace(0, 0.05, 6)
reg = zrlh_detector_region(theta, etas, deltas)
print("\nrows eta, columns delta; '#' = nonlocal")
print("       " + " ".join(f"{d:5.3f}" for d in deltas))
for i, e in enumerate(etas):
    print(f"{e:5.3f}  " + " ".join("  #  " if v else "  .  " for v in reg.in_region[i]))

# the polynomial fit in closed form tracks the numerics
diff = max(abs(obs3_polynomial(e, d) - reg.value[i, j]) for i, e in enumerate(etas) for j, d in enumerate(deltas))
print(f"\nmax |closed form - pipeline| = {diff:.1e}")

for d in (0.0, 0.01, 0.02):
    eta = zrlh_critical_eta(theta, d)
    print(f"delta = {d:.2f}: eta_crit = {eta:.5f}" if eta else f"delta = {d:.2f}: no certification")
