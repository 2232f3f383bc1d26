import numpy as np
import pytest

from mdlcert.inequalities import MDMeasures, TiltedParams, md_tilted_bound, tilted_value
from mdlcert.mdl_models import (
    PRESETS,
    FiniteHVModel,
    adversary_model,
    bruteforce_md_tilted_max,
    md_measures,
    model_behavior,
    oracle_gap,
    settings_marginal,
)


def test_validation():
    with pytest.raises(ValueError):
        FiniteHVModel([0.5, 0.6], np.full((2, 2, 2), 0.25))
    with pytest.raises(ValueError):
        FiniteHVModel([1.0], np.full((1, 2, 2), 0.3))
    with pytest.raises(ValueError):
        FiniteHVModel([1.0], np.full((1, 2, 2), 0.25), responses_A=[[1], [0]])


def test_posterior_bayes():
    ps = np.array([[[0.4, 0.1], [0.3, 0.2]], [[0.1, 0.2], [0.3, 0.4]]])
    m = FiniteHVModel([0.25, 0.75], ps)
    post = m.posterior()
    pxy = 0.25 * ps[0] + 0.75 * ps[1]
    assert np.allclose(post[0], 0.25 * ps[0] / pxy)
    assert np.allclose(post.sum(axis=0), 1)


def test_zero_settings_probability_rejected():
    ps = np.zeros((1, 2, 2))
    ps[0, 0, 0] = 1
    with pytest.raises(ValueError, match="vanishes"):
        FiniteHVModel([1.0], ps).posterior()


def test_measurement_independent_control():
    m = FiniteHVModel([0.3, 0.7], np.full((2, 2, 2), 0.25))
    rep = md_measures(m)
    assert rep.M == 0 and rep.F == 0.5 and rep.M1 == 0 and rep.M2 == 0


def test_fully_dependent_model():
    # lambda reveals the setting pair exactly
    ps = np.zeros((4, 2, 2))
    for k in range(4):
        ps[k].flat[k] = 1
    rep = md_measures(FiniteHVModel(np.full(4, 0.25), ps))
    assert rep.M == 2 and rep.F == 1 and rep.M1 == 2 and rep.M2 == 2


def test_presets():
    # frozen from the first verified run
    frozen = {1: (1.54409, 0.50402, 1.72806), 2: (1.07940, 1.32894, 0.95213)}
    for k, angles in PRESETS.items():
        m = adversary_model(angles)
        assert np.allclose(settings_marginal(m), 0.25, atol=1e-3)
        rep = md_measures(m)
        assert (rep.M, rep.M1, rep.M2) == pytest.approx(frozen[k], abs=1e-5)
        assert rep.F == pytest.approx((1 + rep.M / 2) / 2)


def test_model_behavior_deterministic():
    m = FiniteHVModel([1.0], np.full((1, 2, 2), 0.25), responses_A=[[1], [-1]], responses_B=[[1], [1]])
    b = model_behavior(m)
    assert b.p("+", "+", 0, 0) == 1 and b.p("-", "+", 1, 1) == 1


def test_oracle_endpoints():
    for alpha, beta in ((1, 0), (2, 3), (1.3, 0.5)):
        t = TiltedParams(alpha, beta)
        assert bruteforce_md_tilted_max(t, MDMeasures(0, 0)) == pytest.approx(beta + 2 * alpha, abs=1e-8)
    assert bruteforce_md_tilted_max(TiltedParams(1, 0), MDMeasures(2, 2)) == pytest.approx(4, abs=1e-8)


def test_oracle_model_realizes_value_within_caps():
    rng = np.random.default_rng(31)
    for _ in range(6):
        t = TiltedParams(rng.uniform(1, 3), rng.uniform(0, 4))
        cap = MDMeasures(*rng.uniform(0, 2, 2))
        value, model = bruteforce_md_tilted_max(t, cap, 2, return_model=True)
        assert np.allclose(settings_marginal(model), 0.25, atol=1e-12)
        rep = md_measures(model)
        assert rep.M1 <= cap.M1 + 1e-9 and rep.M2 <= cap.M2 + 1e-9
        assert tilted_value(model_behavior(model), t) == pytest.approx(value, abs=1e-9)


def random_capped_model(rng, cap, L):
    """Random deterministic model with uniform p(xy), rescaled toward independence until caps hold."""
    post0 = np.full((L, 4), 1 / L)
    raw = rng.dirichlet(np.ones(L), size=4).T  # [lambda, setting]
    for s in np.linspace(1, 0, 21):
        post = s * raw + (1 - s) * post0
        p_lambda = post.mean(axis=1)
        m = FiniteHVModel(
            p_lambda,
            (post / (4 * p_lambda[:, None])).reshape(L, 2, 2),
            responses_A=rng.choice([1, -1], (2, L)),
            responses_B=rng.choice([1, -1], (2, L)),
        )
        rep = md_measures(m)
        if rep.M1 <= cap.M1 and rep.M2 <= cap.M2:
            return m
    return m


def test_random_models_never_beat_oracle():
    rng = np.random.default_rng(41)
    for _ in range(5):
        t = TiltedParams(rng.uniform(1, 3), rng.uniform(0, 3))
        cap = MDMeasures(*rng.uniform(0, 1.5, 2))
        best = bruteforce_md_tilted_max(t, cap, 2)
        for _ in range(200):
            m = random_capped_model(rng, cap, 2)
            assert tilted_value(model_behavior(m), t) <= best + 1e-9


def test_gap_nonnegative():
    assert oracle_gap(TiltedParams(1.5, 1), MDMeasures(0.2, 0.4)) >= -1e-9


def test_lambda_count_validated():
    with pytest.raises(ValueError):
        bruteforce_md_tilted_max(TiltedParams(), MDMeasures(), 5)


def test_bound_attained_with_four_hidden_values():
    # fewer hidden values stay strictly below the closed form at these caps
    t = TiltedParams(1, 0)
    for m in (0.5, 0.276):
        cap = MDMeasures(m, m)
        assert bruteforce_md_tilted_max(t, cap, 3) < md_tilted_bound(t, cap) - 1e-3
        assert bruteforce_md_tilted_max(t, cap, 4) == pytest.approx(md_tilted_bound(t, cap), abs=1e-9)
