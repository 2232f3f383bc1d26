"""Bell-type and measurement-dependent-local (MDL) inequalities.

Setting labels: the first setting of each party is ``x = 0`` / ``y = 0``.
Every ``*_lhs`` function returns the left-hand side of an inequality of the
form ``LHS <= 0``; a positive value certifies nonlocality under that test.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import asin, cos, sin, sqrt
from typing import Literal

import numpy as np

from .behavior import Behavior, JointBehavior, ObservedBehavior, check_no_signalling

SQRT2 = sqrt(2.0)


@dataclass(frozen=True)
class MDLParams:
    """Bounds l <= p(xy|lambda) <= h and the tilting parameter w."""

    l: float
    h: float | None = None
    w: float = 0.0

    def __post_init__(self):
        h = 1 - 3 * self.l if self.h is None else self.h
        object.__setattr__(self, "h", h)
        if not 0 <= self.l <= 0.25:
            raise ValueError("l must lie in [0, 0.25]")
        if not self.l <= h <= 1:
            raise ValueError("need l <= h <= 1")
        if not -0.25 < self.w < 1:
            raise ValueError("w must lie in (-0.25, 1)")


@dataclass(frozen=True)
class TiltedParams:
    alpha: float = 1.0
    beta: float = 0.0

    def __post_init__(self):
        if not self.alpha >= 1:
            raise ValueError("alpha must be >= 1")
        if not self.beta >= 0:
            raise ValueError("beta must be >= 0")


@dataclass(frozen=True)
class MDMeasures:
    """Local degrees of measurement dependence for Alice (M1) and Bob (M2)."""

    M1: float = 0.0
    M2: float = 0.0

    def __post_init__(self):
        if not (0 <= self.M1 <= 2 and 0 <= self.M2 <= 2):
            raise ValueError("M1 and M2 must lie in [0, 2]")


# -- standard Bell expressions ------------------------------------------------


def chsh_value(b: Behavior) -> float:
    E = b.correlators()
    return float(E[0, 0] + E[0, 1] + E[1, 0] - E[1, 1])


def tilted_value(b: Behavior, t: TiltedParams) -> float:
    """beta <A_0> + alpha (<A_0 B_0> + <A_0 B_1>) + <A_1 B_0> - <A_1 B_1>.

    <A_0> is averaged over Bob's settings, which is the marginal under uniform
    p(xy) and equals either block for no-signalling behaviors.
    """
    E = b.correlators()
    return float(
        t.beta * b.mean_A(0)
        + t.alpha * (E[0, 0] + E[0, 1])
        + E[1, 0]
        - E[1, 1]
    )


def tilted_local_bound(t: TiltedParams) -> float:
    return t.beta + 2 * t.alpha


def tilted_ns_bound(t: TiltedParams) -> float:
    return t.beta + 2 * t.alpha + 2


def tilted_quantum_bound(t: TiltedParams) -> float:
    """Closed-form quantum maximum 2 sqrt((1 + alpha^2)(1 + beta^2/4)).

    The formula meets the local bound when alpha * beta = 2 and exceeds the
    no-signalling bound for large beta (at alpha = 1 once beta > 4 + 2 sqrt 6),
    so it is only meaningful between those limits.
    """
    return 2 * sqrt((1 + t.alpha**2) * (1 + t.beta**2 / 4))


# -- MDL inequalities on ideal behaviors --------------------------------------


def _hardy_terms(p) -> float:
    # p(+-|01) + p(-+|10) + p(++|11)
    return p[0, 1, 0, 1] + p[1, 0, 1, 0] + p[0, 0, 1, 1]


def prblg_lhs_joint(j: JointBehavior, l: float, h: float) -> float:
    return float(l * j.probs[0, 0, 0, 0] - h * _hardy_terms(j.probs))


def prblg_lhs(b: Behavior, l: float) -> float:
    """l p(++|00) - (1 - 3l)(p(+-|01) + p(-+|10) + p(++|11))."""
    p = b.probs
    return float(l * p[0, 0, 0, 0] - (1 - 3 * l) * _hardy_terms(p))


def zrlh_lhs(b: Behavior, l: float, w: float) -> float:
    """Tilted-Hardy MDL expression; coincides with :func:`prblg_lhs` at w = 0."""
    if not -0.25 < w < 1:
        raise ValueError("w must lie in (-0.25, 1)")
    p = b.probs
    return float(l * (p[0, 0, 0, 0] + w * p[1, 1, 0, 0] - max(0.0, w)) - (1 - 3 * l) * _hardy_terms(p))


def prblg_row(l: float) -> tuple[np.ndarray, float]:
    """(c, c0) with prblg_lhs(b, l) == c @ b.vector + c0."""
    h = 1 - 3 * l
    c = np.zeros(16)
    # flat index ((x*2 + y)*2 + a)*2 + b
    c[0b0000] = l  # p(++|00)
    c[0b0101] = -h  # p(+-|01)
    c[0b1010] = -h  # p(-+|10)
    c[0b1100] = -h  # p(++|11)
    return c, 0.0


def zrlh_row(l: float, w: float) -> tuple[np.ndarray, float]:
    c = np.zeros((2, 2, 2, 2))  # [x, y, a, b]
    c[0, 0, 0, 0] = l
    c[0, 0, 1, 1] = l * w
    c[0, 1, 0, 1] = c[1, 0, 1, 0] = c[1, 1, 0, 0] = -(1 - 3 * l)
    return c.reshape(-1), -l * max(0.0, w)


# -- observed (four-outcome) behaviors ----------------------------------------


class SignallingError(ValueError):
    pass


def sauer_lhs(o: ObservedBehavior, ns_tol: float = 1e-8) -> float:
    """p(++|00) + p(++|01) + p(++|10) - p(++|11) - p_A(+|0) - p_B(+|0).

    Alice's marginal is read from the y = 0 block and Bob's from the x = 0
    block after checking no-signalling at ``ns_tol``.
    """
    rep = check_no_signalling(o, ns_tol)
    if not rep.passed:
        raise SignallingError(f"observed behavior signals (max deviation {rep.max_deviation:.3e})")
    p = o.probs
    return float(
        p[0, 0, 0, 0] + p[0, 0, 0, 1] + p[0, 0, 1, 0] - p[0, 0, 1, 1]
        - p[0, :, 0, 0].sum() - p[:, 0, 0, 0].sum()
    )


def sauer_row() -> np.ndarray:
    """64-vector c with sauer_lhs(o) == c @ o.vector."""
    c = np.zeros((2, 2, 4, 4))  # [x, y, a, b]
    c[0, 0, 0, 0] += 1
    c[0, 1, 0, 0] += 1
    c[1, 0, 0, 0] += 1
    c[1, 1, 0, 0] -= 1
    c[0, 0, 0, :] -= 1
    c[0, 0, :, 0] -= 1
    return c.reshape(-1)


# -- closed forms -------------------------------------------------------------


def prblg_threshold_amp(alpha: float, phi: float) -> float:
    """Critical l above which the tilted-Bell optimal behavior violates PRBLG."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    t = sqrt(-cos(4 * phi) / alpha**2 + 1 / alpha**2 + 2)
    num = 3 * alpha * t + alpha * cos(2 * phi) * t - 2 * SQRT2 * alpha * sin(phi) ** 2 + SQRT2 * (cos(4 * phi) - 1)
    den = (
        10 * alpha * t
        + 4 * alpha * cos(2 * phi) * (t + SQRT2)
        - 2 * SQRT2 * (alpha + 3 * sin(2 * phi) ** 2)
    )
    if den == 0:
        raise ValueError(f"threshold undefined at alpha={alpha}, phi={phi}")
    return num / den


def amp_violates_prblg(alpha: float, phi: float, l: float) -> bool:
    """Whether the tilted-Bell optimal behavior at (alpha, phi) violates PRBLG at l."""
    return prblg_threshold_amp(alpha, phi) < l


def _xi(w: float) -> float:
    if not -0.25 < w < 1:
        raise ValueError("w must lie in (-0.25, 1)")
    return sqrt(4 * w + 5)


def _hardy_closed(w: float, xi: float) -> float:
    # vanishes identically on the domain; kept so the closed form stays term-for-term
    return 8 * w - 10 * xi + sqrt(xi - 2) * sin(2 * asin(3 - xi)) / sqrt(4 - xi) + 22


def obs4_prblg_closed(w: float, l: float) -> float:
    """PRBLG LHS of the tilted-Hardy behavior as a function of (w, l)."""
    xi = _xi(w)
    p_pp00 = (
        (31 * xi + w * (4 * xi - 34) - 69) / (xi - 1) ** 2
        + (xi - 5) * sqrt(xi - 2) * sqrt(-4 * w + 6 * xi - 13) / (sqrt(4 - xi) * (xi - 1))
        + 0.5
    ) / 2
    return l * p_pp00 - (1 - 3 * l) / (2 * (1 - xi)) * _hardy_closed(w, xi)


def obs4_zrlh_closed(w: float, l: float) -> float:
    """ZRLH LHS of the tilted-Hardy behavior as a function of (w, l)."""
    xi = _xi(w)
    s = sqrt(xi - 2) * sin(2 * asin(3 - xi)) / sqrt(4 - xi)
    return (
        (2 * l * (-4 * w + 7 * xi - 15) + (1 - 3 * l) * s + 8 * w - 10 * xi + 22) / (2 * (xi - 1))
        - l * max(0.0, w)
    )


def obs3_polynomial(eta: float, delta: float) -> float:
    """Sauer LHS of the detector-mapped tilted-Hardy behavior at theta ~ 1.13557."""
    d = delta
    return (
        d * eta * (d * (9.50424 * d - 4 * d**2 - 9.00848) + 4.25636)
        + eta**2 * (d * (2 * d**3 - 5.50424 * d**2 + 5.82473 * d - 3.13675) + 0.816258)
        + 2 * d * (d - 1) * (d**2 - d + 1)
        - 0.752119 * eta
    )


# -- measurement-dependent tilted bound ---------------------------------------


def md_tilted_bound(t: TiltedParams, m: MDMeasures) -> float:
    a = t.alpha
    return t.beta + 2 * a + min(a * (m.M1 + min(m.M1, m.M2)) + m.M2, 2.0)


def md_nonlocal(I: float, t: TiltedParams, m: MDMeasures) -> bool:
    return I > md_tilted_bound(t, m)


Mode = Literal["symmetric", "bob_only", "alice_only"]


def critical_M(t: TiltedParams, mode: Mode = "symmetric") -> float:
    """Largest M for which the maximal quantum violation stays MD-nonlocal.

    ``symmetric`` has M1 = M2 = M, ``bob_only`` M1 = 0, ``alice_only`` M2 = 0.
    Values are only meaningful where :func:`tilted_quantum_bound` lies
    strictly between the local and no-signalling bounds.
    """
    gap = -2 * t.alpha - t.beta + sqrt((1 + t.alpha**2) * (4 + t.beta**2))
    if mode == "symmetric":
        return gap / (1 + 2 * t.alpha)
    if mode == "bob_only":
        return gap
    if mode == "alice_only":
        return gap / t.alpha
    raise ValueError(f"unknown mode {mode!r}")
