"""Quick numerical anchors behind ``mdlcert selfcheck``.

Each anchor returns ``(name, passed, detail)``. The set mirrors the
acceptance suite at reduced sample sizes so it finishes in seconds.
"""
from __future__ import annotations

from math import pi, sqrt

import numpy as np

from . import inequalities as ineq
from .detector import DetectorParams, apply_detectors, outcome_channel
from .inequalities import MDMeasures, TiltedParams
from .mdl_models import PRESETS, adversary_model, bruteforce_md_tilted_max, settings_marginal
from .quantum import w_to_theta, zrlh_behavior
from .scan import min_efficiency_prblg, min_efficiency_zrlh, zrlh_critical_eta


def _close(name, got, want, tol):
    got = np.atleast_1d(np.asarray(got, dtype=float))
    want = np.atleast_1d(np.asarray(want, dtype=float))
    ok = bool(np.all(np.abs(got - want) <= tol))
    return name, ok, f"got {np.round(got, 6).tolist()}, want {want.tolist()} +- {tol:g}"


def _threshold_anchor():
    return _close("amp threshold", ineq.prblg_threshold_amp(1, pi / 4), 0.2023, 5e-4)


def _asymptote():
    return _close("amp threshold asymptote", ineq.prblg_threshold_amp(1e6, pi / 4), 0.25, 1e-4)


def _quantum_bounds():
    got = [ineq.tilted_quantum_bound(TiltedParams(a, b)) for a, b in ((1, 0), (1, 8), (2, 3))]
    return _close("tilted quantum bounds", got, [2.8284, 11.6619, 8.0623], 1e-3)


def _detector_threshold():
    return _close("detector threshold (delta=0)", [min_efficiency_prblg(0.0, l).eta_min for l in (0.0, 0.2)], 0.667, 5e-3)


def _zrlh_reduces():
    a = min_efficiency_prblg(0.01, 0.1).eta_min
    b = min_efficiency_zrlh(0.01, 0.1, 0.0).eta_min
    return _close("zrlh at w=0 equals prblg", b, a, 1e-6)


def _psi_g_boundary():
    return _close("tilted-Hardy critical efficiency", zrlh_critical_eta(1.13557, 0.0), 0.9214, 5e-3)


def _obs4():
    vals = []
    for w in (-0.2, 0.0, 0.3, 0.6, 0.9):
        b = zrlh_behavior(w_to_theta(w))
        vals.append(min(ineq.prblg_lhs(b, 1e-4), ineq.zrlh_lhs(b, 1e-4, w)) > 0)
        vals.append(max(ineq.prblg_lhs(b, 0), ineq.zrlh_lhs(b, 0, w)) <= 0)
    return "tilted-Hardy violates at l=1e-4 only", all(vals), f"{sum(vals)}/{len(vals)} sign checks"


def _corollaries():
    t = TiltedParams(1, 0)
    got = [ineq.critical_M(t, m) for m in ("symmetric", "bob_only", "alice_only")]
    return _close("critical M at alpha=1", got, [0.27614, 0.82843, 0.82843], 1e-5)


def _oracle():
    got = [
        bruteforce_md_tilted_max(TiltedParams(1.5, 2.0), MDMeasures(0, 0)),
        bruteforce_md_tilted_max(TiltedParams(1, 0), MDMeasures(2, 2)),
    ]
    return _close("oracle endpoints", got, [5.0, 4.0], 1e-8)


def _adversary():
    got = np.concatenate([settings_marginal(adversary_model(PRESETS[k])).ravel() for k in PRESETS])
    return _close("adversary marginals", got, 0.25, 1e-3)


def _channel():
    rng = np.random.default_rng(0)
    worst = 0.0
    for eta, delta in rng.random((1000, 2)):
        worst = max(worst, np.abs(outcome_channel(DetectorParams(eta, delta)).matrix.sum(axis=0) - 1).max())
    o = apply_detectors(zrlh_behavior(1.13557), DetectorParams(0.95, 0.01))
    ok = worst <= 1e-12 and o.check_no_signalling(1e-10).passed
    return "detector channel", ok, f"worst column error {worst:.1e}"


ANCHORS = (
    _threshold_anchor, _asymptote, _quantum_bounds, _detector_threshold, _zrlh_reduces,
    _psi_g_boundary, _obs4, _corollaries, _oracle, _adversary, _channel,
)


def run_anchors():
    out = []
    for f in ANCHORS:
        try:
            out.append(f())
        except Exception as e:  # report, do not crash the whole check
            out.append((f.__name__.strip("_"), False, f"{type(e).__name__}: {e}"))
    return out
