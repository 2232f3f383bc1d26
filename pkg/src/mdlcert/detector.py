"""Two-box imperfect-detector model.

Each party owns two detectors, one per ideal outcome. A particle is registered
with efficiency ``eta`` and every detector fires spuriously with probability
``delta``. The observed outcome is ``+``/``-`` when exactly one detector
clicks, ``Phi`` when none does and ``chi`` when both do.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .behavior import Behavior, ObservedBehavior


@dataclass(frozen=True)
class DetectorParams:
    eta: float
    delta: float

    def __post_init__(self):
        for name in ("eta", "delta"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v!r}")


@dataclass(frozen=True, eq=False)
class OutcomeChannel:
    """Column-stochastic 4x2 matrix p(observed | ideal), rows (+, -, Phi, chi)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.shape != (4, 2):
            raise ValueError("channel matrix must be 4x2")
        if np.any(m < 0) or np.any(m > 1) or np.any(np.abs(m.sum(axis=0) - 1) > 1e-12):
            raise ValueError("channel columns must be probability distributions")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def outcome_channel(d: DetectorParams) -> OutcomeChannel:
    eta, delta = d.eta, d.delta
    miss = (1 - eta) * (1 - delta)  # right detector silent
    fire = eta + delta * (1 - eta)  # = 1 - miss, exact at delta = 0
    col = np.array(
        [
            (1 - delta) * fire,  # +   : right detector fires, other silent
            miss * delta,  # -   : only the wrong detector fires
            miss * (1 - delta),  # Phi : nothing fires
            delta * fire,  # chi : both fire
        ]
    )
    return OutcomeChannel(np.column_stack([col, col[[1, 0, 2, 3]]]))


def apply_detectors(b: Behavior, d: DetectorParams, d_bob: DetectorParams | None = None) -> ObservedBehavior:
    """Push an ideal behavior through both parties' outcome channels.

    Bob uses ``d`` as well unless ``d_bob`` is given.
    """
    ca = outcome_channel(d).matrix
    cb = ca if d_bob is None else outcome_channel(d_bob).matrix
    return ObservedBehavior(np.einsum("ia,jb,abxy->ijxy", ca, cb, b.probs))


def detector_matrix(d: DetectorParams, d_bob: DetectorParams | None = None) -> np.ndarray:
    """64x16 matrix taking ``Behavior.vector`` to ``ObservedBehavior.vector``."""
    ca = outcome_channel(d).matrix
    cb = ca if d_bob is None else outcome_channel(d_bob).matrix
    block = np.kron(ca, cb)  # (i, j) x (a, b) in row-major order
    return np.kron(np.eye(4), block)
