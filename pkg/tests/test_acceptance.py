"""Acceptance criteria, one test each; conftest prints a PASS/FAIL line per criterion."""
import time
from math import pi

import numpy as np
import pytest

from mdlcert.behavior import Behavior, check_no_signalling
from mdlcert.detector import DetectorParams, apply_detectors, outcome_channel
from mdlcert.inequalities import (
    MDMeasures,
    TiltedParams,
    critical_M,
    md_tilted_bound,
    obs3_polynomial,
    obs4_prblg_closed,
    obs4_zrlh_closed,
    prblg_lhs,
    prblg_threshold_amp,
    tilted_quantum_bound,
    zrlh_lhs,
)
from mdlcert.mdl_models import (
    PRESETS,
    FiniteHVModel,
    adversary_model,
    bruteforce_md_tilted_max,
    md_measures,
    settings_marginal,
)
from mdlcert.quantum import w_to_theta, zrlh_behavior
from mdlcert.scan import (
    md_region_boundary,
    md_region_grid,
    min_efficiency_prblg,
    min_efficiency_zrlh,
    scan_detectors,
    zrlh_detector_region,
)


def report(n, msg):
    print(f"criterion {n}: {msg}")


def test_criterion_01_amp_threshold():
    v = prblg_threshold_amp(1, pi / 4)
    reps = 2000
    t0 = time.perf_counter()
    for _ in range(reps):
        prblg_threshold_amp(1, pi / 4)
    per_call = (time.perf_counter() - t0) / reps
    report(1, f"l* = {v:.6f}, {per_call * 1e6:.1f} us per call")
    assert abs(v - 0.2023) <= 5e-4
    assert per_call < 1e-3


def test_criterion_02_asymptote():
    v = prblg_threshold_amp(1e6, pi / 4)
    report(2, f"l*(alpha=1e6) = {v:.8f}")
    assert abs(v - 0.25) <= 1e-4


def test_criterion_03_quantum_bounds():
    got = [tilted_quantum_bound(TiltedParams(a, b)) for a, b in ((1, 0), (1, 8), (2, 3))]
    report(3, f"bounds = {np.round(got, 5).tolist()}")
    assert np.allclose(got, [2.8284, 11.6619, 8.0623], atol=1e-3, rtol=0)


def test_criterion_04_detector_threshold():
    t0 = time.perf_counter()
    etas = [min_efficiency_prblg(0.0, l).eta_min for l in (0.0, 0.05, 0.1, 0.2)]
    dt = time.perf_counter() - t0
    report(4, f"eta_min = {etas}, {dt:.2f} s")
    assert all(abs(e - 0.667) <= 0.005 for e in etas)
    assert dt < 30


def test_criterion_05_monotone_in_delta():
    deltas = np.round(np.arange(11) * 0.002, 12)
    for l in (0.0, 0.1):
        etas = scan_detectors(deltas, l=l).etas()
        report(5, f"l={l}: eta_min = {np.round(etas, 5).tolist()}")
        assert not np.isnan(etas).any()
        assert np.all(np.diff(etas) >= 0)


def test_criterion_06_zrlh_w0_equals_prblg():
    for delta, l in ((0.0, 0.0), (0.005, 0.05), (0.01, 0.1), (0.015, 0.2), (0.02, 0.1)):
        a = min_efficiency_prblg(delta, l).eta_min
        b = min_efficiency_zrlh(delta, l, 0.0).eta_min
        report(6, f"delta={delta}, l={l}: prblg {a:.6f}, zrlh {b:.6f}")
        assert abs(a - b) <= 1e-6


def test_criterion_07_psi_g_region():
    etas = np.linspace(0.9, 1, 50)
    deltas = np.linspace(0, 0.05, 50)
    reg = zrlh_detector_region(1.13557, etas, deltas)
    poly = np.array([[obs3_polynomial(e, d) for d in deltas] for e in etas])
    mismatches = int(np.sum(reg.in_region != (poly > 0)))
    # boundary at delta = 0 on a fine eta grid
    fine = zrlh_detector_region(1.13557, np.linspace(0.9, 1, 1001), [0.0])
    eta_crit = fine.boundary_eta(0)
    report(7, f"eta_crit = {eta_crit:.5f}, sign mismatches = {mismatches}")
    assert abs(eta_crit - 0.9214) <= 0.005
    assert mismatches == 0


def test_criterion_08_obs4():
    worst = 0.0
    for w in (-0.2, 0.0, 0.3, 0.6, 0.9):
        b = zrlh_behavior(w_to_theta(w))
        assert prblg_lhs(b, 1e-4) > 0 and zrlh_lhs(b, 1e-4, w) > 0
        assert prblg_lhs(b, 0.0) <= 0 and zrlh_lhs(b, 0.0, w) <= 0
        for l in (0.0, 1e-4):
            worst = max(
                worst,
                abs(obs4_prblg_closed(w, l) - prblg_lhs(b, l)),
                abs(obs4_zrlh_closed(w, l) - zrlh_lhs(b, l, w)),
            )
    report(8, f"closed form vs pipeline max diff = {worst:.2e}")
    assert worst <= 1e-8


def test_criterion_09_corollaries():
    t = TiltedParams(1, 0)
    got = [critical_M(t, m) for m in ("symmetric", "bob_only", "alice_only")]
    report(9, f"critical M = {np.round(got, 6).tolist()}")
    assert np.allclose(got, [0.27614, 0.82843, 0.82843], atol=1e-5, rtol=0)


def test_criterion_10_oracle():
    rng = np.random.default_rng(2024)
    t0 = time.perf_counter()
    worst = -np.inf
    for i in range(50):
        t = TiltedParams(rng.uniform(1, 3), rng.uniform(0, 4))
        cap = MDMeasures(*rng.uniform(0, 2, 2))
        L = 3 if i % 2 else 2
        worst = max(worst, bruteforce_md_tilted_max(t, cap, L) - md_tilted_bound(t, cap))
    zero = [
        bruteforce_md_tilted_max(TiltedParams(a, b), MDMeasures(0, 0), 3) - (b + 2 * a)
        for a, b in ((1, 0), (2.5, 1.5), (1.2, 3.7))
    ]
    full = bruteforce_md_tilted_max(TiltedParams(1, 0), MDMeasures(2, 2), 3)
    dt = time.perf_counter() - t0
    report(10, f"max(oracle - bound) = {worst:.2e}, M=0 errors {np.abs(zero).max():.1e}, M=2 value {full:.10f}, {dt:.1f} s")
    assert worst <= 1e-8
    assert np.abs(zero).max() <= 1e-8
    assert abs(full - 4) <= 1e-8
    assert dt < 300


def test_criterion_11_adversary():
    for k in (1, 2):
        pxy = settings_marginal(adversary_model(PRESETS[k]))
        report(11, f"preset {k}: p(xy) = {np.round(pxy.ravel(), 6).tolist()}")
        assert np.all(np.abs(pxy - 0.25) <= 1e-3)
    control = FiniteHVModel([0.2, 0.5, 0.3], np.full((3, 2, 2), 0.25))
    rep = md_measures(control)
    assert rep.M == 0 and rep.F == 0.5


def test_criterion_12_channel():
    rng = np.random.default_rng(12)
    base = Behavior(np.full((2, 2, 2, 2), 0.25))
    other = zrlh_behavior(1.13557)
    worst_col = worst_norm = worst_ns = 0.0
    for k, (eta, delta) in enumerate(rng.random((10_000, 2))):
        d = DetectorParams(eta, delta)
        worst_col = max(worst_col, np.abs(outcome_channel(d).matrix.sum(axis=0) - 1).max())
        if k % 10 == 0:
            o = apply_detectors(other if k % 20 else base, d)
            worst_norm = max(worst_norm, np.abs(o.probs.sum(axis=(0, 1)) - 1).max())
            worst_ns = max(worst_ns, check_no_signalling(o).max_deviation)
    report(12, f"column {worst_col:.1e}, normalization {worst_norm:.1e}, signalling {worst_ns:.1e}")
    assert worst_col <= 1e-12
    assert worst_norm <= 1e-10 and worst_ns <= 1e-10


def test_criterion_13_region_structure():
    grid = np.linspace(0, 2, 201)
    step = grid[1] - grid[0]
    cases = [(TiltedParams(1, 8), [10.83, 11.66, 11.83, 12.0]), (TiltedParams(1, 0), [2.42, 2.83, 3.42, 4.0]), (TiltedParams(2, 3), [7.5, 8.06])]
    for t, Is in cases:
        reg = md_region_grid(t, Is, grid)
        a = t.alpha
        for k, I in enumerate(Is):
            lab = reg.nonlocal_[k]
            gap = I - t.beta - 2 * a
            for i, m1 in enumerate(grid):
                inside = np.flatnonzero(lab[i])
                if not inside.size or inside[-1] == len(grid) - 1:
                    continue
                # last nonlocal grid point in this column sits within one step of the curve
                m2 = grid[inside[-1]]
                exact = md_region_boundary(t, I, m1)
                assert exact is not None and abs(exact - m2) <= step + 1e-12
                f = a * (m1 + min(m1, m2)) + m2
                assert abs(f - gap) <= (a + 1) * step + 1e-12
            if I == t.beta + 2 * a + 2:
                f = np.array([[a * (m1 + min(m1, m2)) + m2 for m2 in grid] for m1 in grid])
                # grid points lying on the cap curve itself are settled by rounding
                decided = np.abs(f - 2) > 1e-12
                assert np.array_equal(lab[decided], (f < 2)[decided])
        report(13, f"alpha={t.alpha}, beta={t.beta}: region sizes {reg.nonlocal_.sum(axis=(1, 2)).tolist()}")
