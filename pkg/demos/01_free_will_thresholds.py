"""How much free will does a tilted-Bell experiment need to rule out MDL models?

The optimal qubit behavior for the tilted expression is generated for several
(alpha, phi) and pushed through the PRBLG inequality. Below the printed l the
behavior can be reproduced by a measurement-dependent local model.
"""
from math import pi

import numpy as np

from mdlcert import TiltedFamilyParams, TiltedParams, amp_tilted_behavior, prblg_lhs, prblg_threshold_amp, tilted_value

# l = 1/4 is full free will, l = 0 means none at all
print("alpha   phi      tilted value   threshold l*")
for alpha in (1.0, 1.5, 3.0):
    for phi in (pi / 16, pi / 8, pi / 4):
        b = amp_tilted_behavior(TiltedFamilyParams(alpha, phi))
        I = tilted_value(b, TiltedParams(alpha, 0.0))
        print(f"{alpha:5.2f}  {phi:6.4f}   {I:10.6f}     {prblg_threshold_amp(alpha, phi):.6f}")

# as alpha grows the requirement approaches full free will
for alpha in (10, 100, 1e4, 1e6):
    print(f"alpha = {alpha:>9g}: l* = {prblg_threshold_amp(alpha, pi / 4):.6f}")

# the threshold is the root of a function that is linear in l; check it directly
b = amp_tilted_behavior(TiltedFamilyParams(1.0, pi / 4))
l_star = prblg_threshold_amp(1.0, pi / 4)
for l in np.array([-1e-3, 0, 1e-3]) + l_star:
    print(f"l = {l:.5f}  PRBLG LHS = {prblg_lhs(b, l):+.2e}")
