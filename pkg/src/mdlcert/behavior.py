"""Bipartite behaviors p(ab|xy) for the two-setting, two-outcome scenario.

Index conventions used throughout the package:

* outcome index 0 is ``+`` (value +1), index 1 is ``-`` (value -1);
* observed outcomes after the detector channel are ordered ``+, -, Phi, chi``
  (no click, double click);
* arrays are stored as ``probs[a, b, x, y]``;
* flat vectors and JSON use row-major ``(x, y, a, b)`` order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

SIGNS = np.array([1.0, -1.0])
IDEAL_LABELS = ("+", "-")
OBSERVED_LABELS = ("+", "-", "Phi", "chi")

CLAMP_TOL = 1e-12


class InvalidBehaviorError(ValueError):
    """Raised when an array is not a valid (normalized, nonnegative) behavior."""


def _outcome_index(o, n_outcomes: int) -> int:
    if isinstance(o, str):
        labels = IDEAL_LABELS if n_outcomes == 2 else OBSERVED_LABELS
        aliases = {"−": "-", "Φ": "Phi", "χ": "chi", "phi": "Phi"}
        o = aliases.get(o, o)
        return labels.index(o)
    if o in (1, -1) and n_outcomes == 2:
        return 0 if o == 1 else 1
    raise ValueError(f"unknown outcome {o!r}")


@dataclass(frozen=True, eq=False)
class _Box:
    """Shared machinery for ideal and observed behaviors."""

    probs: np.ndarray
    n_outcomes = 2
    norm_tol = 1e-12

    def __post_init__(self):
        k = self.n_outcomes
        p = np.array(self.probs, dtype=float, copy=True)
        if p.shape != (k, k, 2, 2):
            raise InvalidBehaviorError(f"expected shape {(k, k, 2, 2)}, got {p.shape}")
        if not np.all(np.isfinite(p)):
            raise InvalidBehaviorError("non-finite probability")
        low = np.argwhere(p < -CLAMP_TOL)
        if low.size:
            a, b, x, y = low[0]
            raise InvalidBehaviorError(
                f"negative probability {p[a, b, x, y]:.3e} at (a={a}, b={b}, x={x}, y={y})"
            )
        p[p < 0] = 0.0
        if np.any(p > 1 + self.norm_tol):
            raise InvalidBehaviorError("probability above 1")
        sums = p.sum(axis=(0, 1))
        bad = np.abs(sums - 1.0) > self.norm_tol
        if np.any(bad):
            x, y = np.argwhere(bad)[0]
            raise InvalidBehaviorError(f"block (x={x}, y={y}) sums to {sums[x, y]!r}")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @classmethod
    def from_vector(cls, vec: Sequence[float]):
        k = cls.n_outcomes
        v = np.asarray(vec, dtype=float)
        if v.size != 4 * k * k:
            raise InvalidBehaviorError(f"expected {4 * k * k} entries, got {v.size}")
        return cls(v.reshape(2, 2, k, k).transpose(2, 3, 0, 1))

    @property
    def vector(self) -> np.ndarray:
        """Flat copy in (x, y, a, b) row-major order."""
        return self.probs.transpose(2, 3, 0, 1).reshape(-1).copy()

    def p(self, a, b, x: int, y: int) -> float:
        k = self.n_outcomes
        return float(self.probs[_outcome_index(a, k), _outcome_index(b, k), x, y])

    def marginal_A(self, a, x: int, y: int) -> float:
        return float(self.probs[_outcome_index(a, self.n_outcomes), :, x, y].sum())

    def marginal_B(self, b, x: int, y: int) -> float:
        return float(self.probs[:, _outcome_index(b, self.n_outcomes), x, y].sum())

    def check_no_signalling(self, tol: float = 1e-10) -> "NoSignallingReport":
        return check_no_signalling(self, tol)

    def to_json(self, **extra) -> str:
        return behavior_to_json(self, **extra)

    def __eq__(self, other):
        return type(self) is type(other) and np.array_equal(self.probs, other.probs)

    def __hash__(self):
        return hash((type(self).__name__, self.probs.tobytes()))


class Behavior(_Box):
    """Ideal conditional distribution p(ab|xy) with a, b in {+, -}.

    Entries within 1e-12 below zero are clamped to 0; each (x, y) block must
    sum to 1 within 1e-12. Instances are immutable.
    """

    n_outcomes = 2
    norm_tol = 1e-12

    def correlator(self, x: int, y: int) -> float:
        return float(SIGNS @ self.probs[:, :, x, y] @ SIGNS)

    def mean_A(self, x: int, y: int | None = None) -> float:
        """<A_x>, read from the y block, or averaged over y when ``y`` is None."""
        m = SIGNS @ self.probs[:, :, x, :].sum(axis=1)
        return float(m.mean() if y is None else m[y])

    def mean_B(self, y: int, x: int | None = None) -> float:
        m = SIGNS @ self.probs[:, :, :, y].sum(axis=0)
        return float(m.mean() if x is None else m[x])

    def correlators(self) -> np.ndarray:
        return np.einsum("a,b,abxy->xy", SIGNS, SIGNS, self.probs)


class ObservedBehavior(_Box):
    """Post-detector distribution with outcomes (+, -, Phi, chi) per party."""

    n_outcomes = 4
    norm_tol = 1e-10


@dataclass(frozen=True, eq=False)
class JointBehavior:
    """Joint distribution p(ab, xy) = p(ab|xy) p(xy)."""

    probs: np.ndarray
    settings: np.ndarray

    def __post_init__(self):
        p = np.array(self.probs, dtype=float, copy=True)
        s = np.array(self.settings, dtype=float, copy=True)
        if p.shape != (2, 2, 2, 2) or s.shape != (2, 2):
            raise InvalidBehaviorError("joint behavior needs shapes (2,2,2,2) and (2,2)")
        if abs(p.sum() - 1.0) > 1e-12 or abs(s.sum() - 1.0) > 1e-12:
            raise InvalidBehaviorError("joint behavior or settings not normalized")
        p.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "probs", p)
        object.__setattr__(self, "settings", s)

    def p(self, a, b, x: int, y: int) -> float:
        return float(self.probs[_outcome_index(a, 2), _outcome_index(b, 2), x, y])

    def conditional(self) -> Behavior:
        """Renormalize by p(xy); every settings cell must be positive."""
        if np.any(self.settings <= 0):
            raise InvalidBehaviorError("conditional undefined where p(xy) = 0")
        return Behavior(self.probs / self.settings)


@dataclass(frozen=True)
class NoSignallingReport:
    max_deviation_A: float
    max_deviation_B: float
    tol: float

    @property
    def max_deviation(self) -> float:
        return max(self.max_deviation_A, self.max_deviation_B)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol

    def __bool__(self):
        return self.passed


def check_no_signalling(b: _Box, tol: float = 1e-10) -> NoSignallingReport:
    """Largest change of either party's marginal under the other party's setting."""
    pa = b.probs.sum(axis=1)  # [a, x, y]
    pb = b.probs.sum(axis=0)  # [b, x, y]
    dev_a = float(np.max(np.abs(pa[:, :, 0] - pa[:, :, 1])))
    dev_b = float(np.max(np.abs(pb[:, 0, :] - pb[:, 1, :])))
    return NoSignallingReport(dev_a, dev_b, tol)


def from_correlators(mA, mB, corr) -> Behavior:
    """Expand marginals <A_x>, <B_y> and correlators <A_x B_y> into p(ab|xy).

    p(ab|xy) = (1 + a mA[x] + b mB[y] + ab corr[x][y]) / 4
    """
    mA = np.asarray(mA, dtype=float)
    mB = np.asarray(mB, dtype=float)
    corr = np.asarray(corr, dtype=float)
    if mA.shape != (2,) or mB.shape != (2,) or corr.shape != (2, 2):
        raise ValueError("need mA[2], mB[2], corr[2][2]")
    p = (
        1.0
        + SIGNS[:, None, None, None] * mA[None, None, :, None]
        + SIGNS[None, :, None, None] * mB[None, None, None, :]
        + np.multiply.outer(np.outer(SIGNS, SIGNS), corr)
    ) / 4.0
    return Behavior(p)


def uniform_behavior() -> Behavior:
    return Behavior(np.full((2, 2, 2, 2), 0.25))


def pr_box() -> Behavior:
    """Extremal no-signalling box with correlators ((1, 1), (1, -1))."""
    return from_correlators((0, 0), (0, 0), ((1, 1), (1, -1)))


def deterministic_behavior(A: Sequence[int], B: Sequence[int]) -> Behavior:
    """Product behavior with outcomes a = A[x], b = B[y] in {+1, -1}."""
    p = np.zeros((2, 2, 2, 2))
    for x in range(2):
        for y in range(2):
            p[_outcome_index(A[x], 2), _outcome_index(B[y], 2), x, y] = 1.0
    return Behavior(p)


def to_joint(b: Behavior, settings=None) -> JointBehavior:
    """Multiply p(ab|xy) by a settings distribution (uniform 1/4 by default)."""
    s = np.full((2, 2), 0.25) if settings is None else np.asarray(settings, dtype=float)
    if s.shape != (2, 2):
        s = s.reshape(2, 2)
    if np.any(s < 0) or abs(s.sum() - 1.0) > 1e-10:
        raise ValueError(f"settings must be a distribution, got sum {s.sum()!r}")
    return JointBehavior(b.probs * s[None, None, :, :], s)


def behavior_to_json(b: _Box, **extra) -> str:
    payload = {"scenario": "2222", "p": [float(v) for v in b.vector]}
    if isinstance(b, ObservedBehavior):
        payload["outcomes"] = list(OBSERVED_LABELS)
    payload.update(extra)
    return json.dumps(payload)


def behavior_from_json(text: str) -> Behavior | ObservedBehavior:
    """Parse either behavior kind; the length of ``p`` decides which."""
    data = json.loads(text)
    if data.get("scenario", "2222") != "2222":
        raise InvalidBehaviorError(f"unsupported scenario {data.get('scenario')!r}")
    p = data["p"]
    if len(p) == 16:
        return Behavior.from_vector(p)
    if len(p) == 64:
        return ObservedBehavior.from_vector(p)
    raise InvalidBehaviorError(f"'p' must have 16 or 64 entries, got {len(p)}")
