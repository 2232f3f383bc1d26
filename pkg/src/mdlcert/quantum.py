"""Qubit-pair behaviors from the Born rule."""
from __future__ import annotations

from dataclasses import dataclass
from math import asin, atan, cos, sin, sqrt

import numpy as np

from .behavior import Behavior, from_correlators

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
_I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True, eq=False)
class PureTwoQubitState:
    """Amplitudes in the basis |00>, |01>, |10>, |11>."""

    amp: np.ndarray

    def __post_init__(self):
        a = np.array(self.amp, dtype=complex).reshape(-1)
        if a.shape != (4,):
            raise ValueError("a two-qubit state has 4 amplitudes")
        norm = float(np.vdot(a, a).real)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state not normalized: <psi|psi> = {norm!r}")
        a.setflags(write=False)
        object.__setattr__(self, "amp", a)


@dataclass(frozen=True, eq=False)
class DichotomicObservable:
    """n . sigma for a unit Bloch vector n, so the eigenvalues are exactly +1 and -1."""

    bloch: np.ndarray

    def __post_init__(self):
        n = np.array(self.bloch, dtype=float).reshape(-1)
        if n.shape != (3,):
            raise ValueError("Bloch vector needs 3 components")
        if abs(np.linalg.norm(n) - 1.0) > 1e-12:
            raise ValueError(f"Bloch vector has norm {np.linalg.norm(n)!r}, expected 1")
        n.setflags(write=False)
        object.__setattr__(self, "bloch", n)

    @classmethod
    def xz(cls, cx: float, cz: float) -> "DichotomicObservable":
        return cls((cx, 0.0, cz))

    @property
    def matrix(self) -> np.ndarray:
        return np.einsum("i,ijk->jk", self.bloch, PAULI)

    def projector(self, sign: int) -> np.ndarray:
        return (_I2 + sign * self.matrix) / 2


SIGMA_X = DichotomicObservable((1.0, 0.0, 0.0))
SIGMA_Z = DichotomicObservable((0.0, 0.0, 1.0))


def born_behavior(state: PureTwoQubitState, A0, A1, B0, B1) -> Behavior:
    """p(ab|xy) = <psi| P_a(A_x) (x) P_b(B_y) |psi> with P_+- = (I +- O)/2."""
    psi = state.amp
    p = np.empty((2, 2, 2, 2))
    for x, A in enumerate((A0, A1)):
        for y, B in enumerate((B0, B1)):
            for ia, a in enumerate((1, -1)):
                for ib, b in enumerate((1, -1)):
                    op = np.kron(A.projector(a), B.projector(b))
                    p[ia, ib, x, y] = np.vdot(psi, op @ psi).real
    return Behavior(p)


PHI_SLACK = 1e-9


@dataclass(frozen=True)
class TiltedFamilyParams:
    """State angle ``phi`` and tilt ``alpha`` of the tilted-Bell optimal family."""

    alpha: float
    phi: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        # accept decimal renderings of pi/4 such as 0.7853981634
        if not -PHI_SLACK <= self.phi <= np.pi / 4 + PHI_SLACK:
            raise ValueError("phi must lie in [0, pi/4]")
        object.__setattr__(self, "phi", min(max(float(self.phi), 0.0), np.pi / 4))

    @property
    def mu(self) -> float:
        return atan(sin(2 * self.phi) / self.alpha)


def amp_tilted_behavior(p: TiltedFamilyParams) -> Behavior:
    c2, s2 = cos(2 * p.phi), sin(2 * p.phi)
    mu = p.mu
    return from_correlators(
        mA=(c2, 0.0),
        mB=(c2 * cos(mu), c2 * cos(mu)),
        corr=((cos(mu), cos(mu)), (s2 * sin(mu), -s2 * sin(mu))),
    )


def w_to_theta(w: float) -> float:
    """State angle of the tilted-Hardy configuration for tilt ``w`` in (-0.25, 1)."""
    if not -0.25 < w < 1:
        raise ValueError("w must lie in (-0.25, 1)")
    return asin(3 - sqrt(4 * w + 5))


def theta_to_w(theta: float) -> float:
    return ((3 - sin(theta)) ** 2 - 5) / 4


def zrlh_config(theta: float):
    """State cos(t/2)|00> - sin(t/2)|11> and the shared settings A_x = B_x.

    Returns ``(state, (A0, A1, B0, B1))``.
    """
    s = sin(theta)
    if not 0 < s < 1:
        raise ValueError(f"need 0 < sin(theta) < 1, got sin({theta}) = {s}")
    root = sqrt(s + 1)
    A0 = DichotomicObservable.xz(
        -sqrt(2) * s * sqrt(s) / ((2 - s) * root),
        -(s + 2) * sqrt(1 - s) / ((2 - s) * root),
    )
    A1 = DichotomicObservable.xz(sqrt(2) * sqrt(s) / root, -sqrt(1 - s) / root)
    state = PureTwoQubitState((cos(theta / 2), 0, 0, -sin(theta / 2)))
    return state, (A0, A1, A0, A1)


def zrlh_behavior(theta: float) -> Behavior:
    state, obs = zrlh_config(theta)
    return born_behavior(state, *obs)


def chsh_optimal_config():
    """Maximally entangled state and settings reaching 2*sqrt(2) on CHSH."""
    state = PureTwoQubitState(np.array([1, 0, 0, -1]) / sqrt(2))
    r = 1 / sqrt(2)
    return state, (SIGMA_Z, SIGMA_X, DichotomicObservable.xz(-r, r), DichotomicObservable.xz(r, r))
