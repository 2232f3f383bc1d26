"""Minimum detection efficiency for certifying MDL violations with dark counts.

For every dark-count rate delta the scan searches over ideal no-signalling
behaviors that violate PRBLG, passes them through the two-box detector model
and asks whether the observed four-outcome test can still be violated.
Set MDLCERT_WORKERS to spread the delta grid over several processes.
"""
import numpy as np

from mdlcert import scan_detectors

deltas = np.round(np.arange(0, 0.021, 0.004), 6)
header = "delta   " + "  ".join(f"l={l:<5g}" for l in (0, 0.05, 0.1, 0.2))
print(header)
table = [scan_detectors(deltas, l=l).etas() for l in (0, 0.05, 0.1, 0.2)]
for i, d in enumerate(deltas):
    print(f"{d:.3f}   " + "  ".join(f"{col[i]:.5f}" for col in table))

# the maximizer at threshold: a PR-type box
row = scan_detectors([0.0], l=0.1).rows[0]
print("\nmaximizing behavior correlators at delta = 0:")
print(np.round(row.maximizing_behavior.correlators(), 4))
