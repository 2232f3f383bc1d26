from math import pi, sqrt

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mdlcert import inequalities as ineq
from mdlcert.behavior import Behavior, ObservedBehavior, deterministic_behavior, pr_box, to_joint, uniform_behavior
from mdlcert.detector import DetectorParams, apply_detectors
from mdlcert.inequalities import MDMeasures, TiltedParams
from mdlcert.quantum import TiltedFamilyParams, amp_tilted_behavior, w_to_theta, zrlh_behavior

from test_behavior import random_ns_behavior

alphas = st.floats(1, 10)
betas = st.floats(0, 10)
Ms = st.floats(0, 2)


def bisect(f, lo, hi, tol=1e-12):
    flo = f(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (f(mid) > 0) == (flo > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_pr_box_values():
    pr = pr_box()
    assert ineq.chsh_value(pr) == pytest.approx(4)
    assert ineq.tilted_value(pr, TiltedParams(1, 0)) == pytest.approx(4)
    # PR box has p(++|00) = 1/2 and no Hardy events
    assert ineq.prblg_lhs(pr, 0.1) == pytest.approx(0.05)


def test_uniform_is_mdl_local():
    u = uniform_behavior()
    for l in (0, 0.05, 0.25):
        assert ineq.prblg_lhs(u, l) <= 1e-15


def test_rows_match_evaluators():
    rng = np.random.default_rng(8)
    for _ in range(100):
        b = random_ns_behavior(rng)
        l = rng.uniform(0, 0.25)
        w = rng.uniform(-0.24, 0.99)
        c, c0 = ineq.prblg_row(l)
        assert c @ b.vector + c0 == pytest.approx(ineq.prblg_lhs(b, l), abs=1e-14)
        c, c0 = ineq.zrlh_row(l, w)
        assert c @ b.vector + c0 == pytest.approx(ineq.zrlh_lhs(b, l, w), abs=1e-14)


def test_zrlh_reduces_to_prblg():
    rng = np.random.default_rng(9)
    for _ in range(50):
        b = random_ns_behavior(rng)
        l = rng.uniform(0, 0.25)
        assert ineq.zrlh_lhs(b, l, 0.0) == pytest.approx(ineq.prblg_lhs(b, l), abs=1e-15)


def test_joint_form_is_quarter():
    rng = np.random.default_rng(10)
    for _ in range(50):
        b = random_ns_behavior(rng)
        l = rng.uniform(0, 0.25)
        j = to_joint(b)
        assert ineq.prblg_lhs_joint(j, l, 1 - 3 * l) == pytest.approx(ineq.prblg_lhs(b, l) / 4, abs=1e-15)


def test_sauer_row_matches():
    rng = np.random.default_rng(12)
    c = ineq.sauer_row()
    for _ in range(50):
        o = apply_detectors(random_ns_behavior(rng), DetectorParams(*rng.random(2)))
        assert c @ o.vector == pytest.approx(ineq.sauer_lhs(o), abs=1e-14)


def test_sauer_rejects_signalling():
    p = np.zeros((4, 4, 2, 2))
    p[0, 0, 0, :] = 1.0
    p[0, 1, 1, :] = 1.0
    with pytest.raises(ineq.SignallingError):
        ineq.sauer_lhs(ObservedBehavior(p))


def test_local_deterministic_points():
    rng = np.random.default_rng(13)
    ident = DetectorParams(1.0, 0.0)
    for _ in range(1000):
        b = deterministic_behavior(rng.choice([1, -1], 2), rng.choice([1, -1], 2))
        t = TiltedParams(rng.uniform(1, 4), rng.uniform(0, 4))
        assert ineq.sauer_lhs(apply_detectors(b, ident)) <= 1e-15
        assert ineq.tilted_value(b, t) <= ineq.tilted_local_bound(t) + 1e-12
        assert ineq.chsh_value(b) <= 2


@settings(max_examples=200, deadline=None)
@given(alphas, betas)
def test_quantum_formula_above_local(alpha, beta):
    # Cauchy-Schwarz on (alpha, 1) . (2, beta)
    t = TiltedParams(alpha, beta)
    assert ineq.tilted_local_bound(t) <= ineq.tilted_quantum_bound(t) + 1e-12


@settings(max_examples=200, deadline=None)
@given(alphas)
def test_quantum_formula_below_ns_untilted(alpha):
    t = TiltedParams(alpha, 0.0)
    assert ineq.tilted_quantum_bound(t) <= ineq.tilted_ns_bound(t) + 1e-12


@pytest.mark.parametrize("alpha,beta", [(1, 0), (1, 8), (2, 3), (1, 4), (3, 1)])
def test_quantum_formula_between_bounds_on_figure_points(alpha, beta):
    t = TiltedParams(alpha, beta)
    assert ineq.tilted_local_bound(t) < ineq.tilted_quantum_bound(t) <= ineq.tilted_ns_bound(t)


def test_quantum_formula_leaves_ns_polytope_for_large_beta():
    # the closed form is not a valid bound everywhere: at alpha = 1 it crosses
    # the no-signalling value once beta > 4 + 2 sqrt(6)
    edge = 4 + 2 * sqrt(6)
    assert ineq.tilted_quantum_bound(TiltedParams(1, edge)) == pytest.approx(ineq.tilted_ns_bound(TiltedParams(1, edge)))
    t = TiltedParams(1, 10)
    assert ineq.tilted_quantum_bound(t) > ineq.tilted_ns_bound(t)


@settings(max_examples=200, deadline=None)
@given(alphas, betas, Ms, Ms, st.floats(0, 0.5))
def test_md_bound_monotone(alpha, beta, m1, m2, dm):
    t = TiltedParams(alpha, beta)
    base = ineq.md_tilted_bound(t, MDMeasures(m1, m2))
    assert base <= ineq.tilted_ns_bound(t) + 1e-12
    assert ineq.md_tilted_bound(t, MDMeasures(min(m1 + dm, 2), m2)) >= base - 1e-12
    assert ineq.md_tilted_bound(t, MDMeasures(m1, min(m2 + dm, 2))) >= base - 1e-12


@settings(max_examples=200, deadline=None)
@given(alphas, betas)
def test_critical_M_ordering(alpha, beta):
    t = TiltedParams(alpha, beta)
    assert ineq.critical_M(t, "symmetric") <= ineq.critical_M(t, "bob_only") + 1e-12
    assert ineq.critical_M(t, "symmetric") <= ineq.critical_M(t, "alice_only") + 1e-12


def test_critical_M_is_where_quantum_max_stops_violating():
    for alpha, beta in ((1, 0), (1.5, 0.5), (1, 8), (2, 3)):
        t = TiltedParams(alpha, beta)
        q = ineq.tilted_quantum_bound(t)
        for mode, cap in (
            ("symmetric", lambda m: MDMeasures(m, m)),
            ("bob_only", lambda m: MDMeasures(0, m)),
            ("alice_only", lambda m: MDMeasures(m, 0)),
        ):
            root = bisect(lambda m: q - ineq.md_tilted_bound(t, cap(m)), 0.0, 2.0)
            assert ineq.critical_M(t, mode) == pytest.approx(root, abs=1e-9)


def test_param_validation():
    with pytest.raises(ValueError):
        TiltedParams(0.5, 0)
    with pytest.raises(ValueError):
        MDMeasures(2.5, 0)
    with pytest.raises(ValueError):
        ineq.MDLParams(0.3)
    assert ineq.MDLParams(0.1).h == pytest.approx(0.7)
    with pytest.raises(ValueError):
        ineq.critical_M(TiltedParams(), "both")


def test_amp_threshold_matches_pipeline_root():
    for alpha, phi in ((1, pi / 4), (1.5, 0.6), (3, 0.4), (1, 0.2)):
        b = amp_tilted_behavior(TiltedFamilyParams(alpha, phi))
        root = bisect(lambda l: ineq.prblg_lhs(b, l), 0.0, 0.25)
        assert ineq.prblg_threshold_amp(alpha, phi) == pytest.approx(root, abs=1e-9)
        assert ineq.amp_violates_prblg(alpha, phi, root + 1e-6)
        assert not ineq.amp_violates_prblg(alpha, phi, root - 1e-6)


def test_obs4_closed_forms_match_pipeline():
    for w in np.linspace(-0.2, 0.95, 12):
        b = zrlh_behavior(w_to_theta(w))
        for l in (0, 1e-4, 0.05, 0.2):
            assert ineq.obs4_prblg_closed(w, l) == pytest.approx(ineq.prblg_lhs(b, l), abs=1e-10)
            assert ineq.obs4_zrlh_closed(w, l) == pytest.approx(ineq.zrlh_lhs(b, l, w), abs=1e-10)


def test_obs3_polynomial_sign_map():
    b = zrlh_behavior(1.13557)
    for eta in np.linspace(0.9, 1, 50):
        for delta in np.linspace(0, 0.05, 50):
            v = ineq.sauer_lhs(apply_detectors(b, DetectorParams(eta, delta)))
            poly = ineq.obs3_polynomial(eta, delta)
            assert poly == pytest.approx(v, abs=1e-5)
            assert (v > 0) == (poly > 0)
