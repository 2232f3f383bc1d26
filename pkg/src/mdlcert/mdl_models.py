"""Finite hidden-variable models with measurement dependence.

A model carries p(lambda), the settings distribution p(xy|lambda) chosen by
the hidden variable, and optionally deterministic response functions
A(x, lambda), B(y, lambda) in {+1, -1}.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy import cos, sin

from .behavior import Behavior
from .inequalities import MDMeasures, TiltedParams, md_tilted_bound
from .lp import LinearProgram, lp_max

MAX_ORACLE_LAMBDAS = 4


@dataclass(frozen=True, eq=False)
class FiniteHVModel:
    p_lambda: np.ndarray
    p_settings_given_lambda: np.ndarray  # [lambda, x, y]
    responses_A: np.ndarray | None = None  # [x, lambda], entries +-1
    responses_B: np.ndarray | None = None  # [y, lambda]

    def __post_init__(self):
        pl = np.array(self.p_lambda, dtype=float).reshape(-1)
        ps = np.array(self.p_settings_given_lambda, dtype=float).reshape(pl.size, 2, 2)
        if np.any(pl < 0) or abs(pl.sum() - 1) > 1e-10:
            raise ValueError("p_lambda must be a distribution")
        if np.any(ps < 0) or np.any(np.abs(ps.sum(axis=(1, 2)) - 1) > 1e-10):
            raise ValueError("each p(xy|lambda) must be a distribution")
        object.__setattr__(self, "p_lambda", pl)
        object.__setattr__(self, "p_settings_given_lambda", ps)
        for name in ("responses_A", "responses_B"):
            r = getattr(self, name)
            if r is not None:
                r = np.array(r, dtype=int).reshape(2, pl.size)
                if not np.all(np.isin(r, (1, -1))):
                    raise ValueError(f"{name} entries must be +1 or -1")
                object.__setattr__(self, name, r)

    @property
    def lambda_count(self) -> int:
        return self.p_lambda.size

    def posterior(self) -> np.ndarray:
        """p(lambda|xy) by Bayes' rule, shape [lambda, x, y]."""
        pxy = settings_marginal(self)
        if np.any(pxy <= 0):
            raise ValueError("p(xy) vanishes for some setting pair; p(lambda|xy) undefined")
        return self.p_settings_given_lambda * self.p_lambda[:, None, None] / pxy


@dataclass(frozen=True)
class AdversaryAngles:
    theta_lambda: float
    theta_s1: float
    phi_s1: float
    delta_s1: float
    theta_s2: float
    phi_s2: float
    delta_s2: float


PRESETS = {
    1: AdversaryAngles(
        theta_lambda=0.785398, theta_s1=0.50413, phi_s1=0.8861, delta_s1=0.175353,
        theta_s2=0.6847, phi_s2=1.2491, delta_s2=1.2491,
    ),
    2: AdversaryAngles(
        theta_lambda=0.57964, theta_s1=0.793732, phi_s1=0.6847, delta_s1=1.06395,
        theta_s2=0.5796, phi_s2=1.2491, delta_s2=0.75,
    ),
}


def _settings_row(theta, phi, delta):
    return np.array(
        [
            [cos(phi) ** 2, sin(theta) ** 2 * sin(phi) ** 2],
            [cos(delta) ** 2 * cos(theta) ** 2 * sin(phi) ** 2, sin(delta) ** 2 * cos(theta) ** 2 * sin(phi) ** 2],
        ]
    )


def adversary_model(a: AdversaryAngles) -> FiniteHVModel:
    """Two-valued hidden variable biasing the settings through squared trig weights."""
    return FiniteHVModel(
        p_lambda=[sin(a.theta_lambda) ** 2, cos(a.theta_lambda) ** 2],
        p_settings_given_lambda=[
            _settings_row(a.theta_s1, a.phi_s1, a.delta_s1),
            _settings_row(a.theta_s2, a.phi_s2, a.delta_s2),
        ],
    )


def settings_marginal(m: FiniteHVModel) -> np.ndarray:
    return np.einsum("l,lxy->xy", m.p_lambda, m.p_settings_given_lambda)


class MDReport(NamedTuple):
    M: float
    F: float
    M1: float
    M2: float


def _dist(post, s1, s2) -> float:
    return float(np.abs(post[:, s1[0], s1[1]] - post[:, s2[0], s2[1]]).sum())


def md_measures(m: FiniteHVModel) -> MDReport:
    """Distances between p(lambda|xy) for different setting pairs.

    M compares (x, y) = (0, 0) with (1, 1); M1 changes Alice's setting with
    Bob's fixed and M2 the other way round, each maximized over the fixed
    setting. F = (1 + M/2)/2 is the chance of telling (0, 0) from (1, 1).
    """
    post = m.posterior()
    M = _dist(post, (0, 0), (1, 1))
    M1 = max(_dist(post, (0, 0), (1, 0)), _dist(post, (0, 1), (1, 1)))
    M2 = max(_dist(post, (0, 0), (0, 1)), _dist(post, (1, 0), (1, 1)))
    return MDReport(M=M, F=0.5 * (1 + M / 2), M1=M1, M2=M2)


def model_behavior(m: FiniteHVModel) -> Behavior:
    if m.responses_A is None or m.responses_B is None:
        raise ValueError("model has no deterministic responses")
    post = m.posterior()
    ia = (m.responses_A == -1).astype(int)  # outcome index per (x, lambda)
    ib = (m.responses_B == -1).astype(int)
    p = np.zeros((2, 2, 2, 2))
    for lam in range(m.lambda_count):
        for x in range(2):
            for y in range(2):
                p[ia[x, lam], ib[y, lam], x, y] += post[lam, x, y]
    return Behavior(p)


# -- brute-force oracle for the measurement-dependent tilted bound ------------

_SETTINGS = ((0, 0), (0, 1), (1, 0), (1, 1))
_STRATEGIES = tuple(itertools.product((1, -1), repeat=4))  # (A0, A1, B0, B1)
# pairs of settings constrained by M1 (Alice's setting varies) and by M2
_M1_PAIRS = ((0, 2), (1, 3))
_M2_PAIRS = ((0, 1), (2, 3))


def _oracle_lp(strategies, t: TiltedParams, cap: MDMeasures) -> LinearProgram:
    """LP over q[lambda, s] = p(lambda | setting s) for fixed responses.

    Variables: 4L posteriors followed by 4L auxiliaries bounding |q - q'|.
    """
    L = len(strategies)
    nq = 4 * L
    n = 2 * nq
    c = np.zeros(n)
    weight = {(0, 0): t.alpha, (0, 1): t.alpha, (1, 0): 1.0, (1, 1): -1.0}
    for lam, (a0, a1, b0, b1) in enumerate(strategies):
        A, B = (a0, a1), (b0, b1)
        for k, (x, y) in enumerate(_SETTINGS):
            c[4 * lam + k] += weight[(x, y)] * A[x] * B[y]
        # <A_0> under uniform p(xy): average of the two y blocks
        c[4 * lam + 0] += t.beta * a0 / 2
        c[4 * lam + 1] += t.beta * a0 / 2

    A_eq = np.zeros((4, n))
    for k in range(4):
        A_eq[k, k:nq:4] = 1.0
    rows, rhs = [], []
    for j, ((s1, s2), bound) in enumerate(
        [(p, cap.M1) for p in _M1_PAIRS] + [(p, cap.M2) for p in _M2_PAIRS]
    ):
        total = np.zeros(n)
        for lam in range(L):
            u = nq + j * L + lam
            for sign in (1.0, -1.0):
                r = np.zeros(n)
                r[4 * lam + s1] = sign
                r[4 * lam + s2] = -sign
                r[u] = -1.0
                rows.append(r)
                rhs.append(0.0)
            total[u] = 1.0
        rows.append(total)
        rhs.append(bound)
    return LinearProgram(c, A_eq, np.ones(4), np.array(rows), np.array(rhs))


def _model_from_posterior(q: np.ndarray, strategies) -> FiniteHVModel:
    post = q.reshape(len(strategies), 2, 2)
    p_lambda = post.sum(axis=(1, 2)) / 4  # uniform p(xy) = 1/4
    keep = p_lambda > 1e-14
    post, p_lambda = post[keep], p_lambda[keep]
    strat = np.array(strategies)[keep]
    p_lambda = p_lambda / p_lambda.sum()
    cond = post / (4 * p_lambda[:, None, None])
    cond = cond / cond.sum(axis=(1, 2), keepdims=True)
    return FiniteHVModel(
        p_lambda, cond,
        responses_A=strat[:, :2].T, responses_B=strat[:, 2:].T,
    )


def bruteforce_md_tilted_max(
    t: TiltedParams, cap: MDMeasures, lambda_count: int = 2, return_model: bool = False
):
    """Maximize the tilted expression over deterministic measurement-dependent models.

    Enumerates every set of at most ``lambda_count`` distinct response
    strategies (relabelling lambda or repeating a strategy cannot raise the
    optimum) and solves the linear program over p(lambda|xy) subject to the
    M1/M2 caps for each. Settings are taken uniform, p(xy) = 1/4.
    """
    if not 1 <= lambda_count <= MAX_ORACLE_LAMBDAS:
        raise ValueError(f"lambda_count must lie in [1, {MAX_ORACLE_LAMBDAS}]")
    best, best_arg = -np.inf, None
    for k in range(1, lambda_count + 1):
        for strategies in itertools.combinations(_STRATEGIES, k):
            sol = lp_max(_oracle_lp(strategies, t, cap))
            if sol.value > best + 1e-12:
                best, best_arg = sol.value, (sol.x[: 4 * k], strategies)
    if return_model:
        return best, _model_from_posterior(*best_arg)
    return best


def oracle_gap(t: TiltedParams, cap: MDMeasures, lambda_count: int = 2) -> float:
    """Closed-form bound minus oracle maximum; never negative if the bound holds."""
    return md_tilted_bound(t, cap) - bruteforce_md_tilted_max(t, cap, lambda_count)
