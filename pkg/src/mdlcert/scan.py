"""Certification frontiers: detector thresholds and measurement-dependence regions.

The detector scans maximize the observed four-outcome test over ideal
behaviors in the no-signalling polytope that violate a chosen MDL inequality.
For fixed detector parameters the observed test is linear in the ideal
behavior, so each evaluation is a single linear program.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Literal, Sequence

import numpy as np

from .behavior import Behavior
from .detector import DetectorParams, apply_detectors, detector_matrix
from .inequalities import (
    MDMeasures,
    TiltedParams,
    critical_M,
    md_nonlocal,
    sauer_lhs,
    sauer_row,
    tilted_ns_bound,
    zrlh_row,
)
from .lp import InfeasibleError, LinearProgram, LPSolution, lp_max
from .quantum import zrlh_behavior

WORKERS_ENV = "MDLCERT_WORKERS"
POSITIVE_TOL = 1e-10


class ScanError(RuntimeError):
    """The optimum is not monotone in eta, so bisection cannot be trusted."""


def no_signalling_constraints() -> tuple[np.ndarray, np.ndarray]:
    """Normalization (4 rows) and no-signalling (8 rows) on ``Behavior.vector``."""
    def idx(a, b, x, y):
        return ((x * 2 + y) * 2 + a) * 2 + b

    rows, rhs = [], []
    for x in range(2):
        for y in range(2):
            r = np.zeros(16)
            for a in range(2):
                for b in range(2):
                    r[idx(a, b, x, y)] = 1.0
            rows.append(r)
            rhs.append(1.0)
    for x in range(2):
        for a in range(2):
            r = np.zeros(16)
            for b in range(2):
                r[idx(a, b, x, 0)] += 1.0
                r[idx(a, b, x, 1)] -= 1.0
            rows.append(r)
            rhs.append(0.0)
    for y in range(2):
        for b in range(2):
            r = np.zeros(16)
            for a in range(2):
                r[idx(a, b, 0, y)] += 1.0
                r[idx(a, b, 1, y)] -= 1.0
            rows.append(r)
            rhs.append(0.0)
    return np.array(rows), np.array(rhs)


_NS_A, _NS_B = no_signalling_constraints()


def max_ns_value(objective: np.ndarray) -> LPSolution:
    """Maximize a linear functional of ``Behavior.vector`` over the no-signalling polytope."""
    return lp_max(LinearProgram(objective, _NS_A, _NS_B))


# -- detector threshold scans -------------------------------------------------

Ineq = Literal["prblg", "zrlh"]


def _mdl_constraint(ineq: Ineq, l: float, w: float):
    if ineq == "prblg":
        w = 0.0
    elif ineq != "zrlh":
        raise ValueError(f"unknown inequality {ineq!r}")
    return zrlh_row(l, w)


def max_observed_violation(
    eta: float, delta: float, ineq: Ineq = "prblg", l: float = 0.0, w: float = 0.0, epsilon: float = 1e-6
) -> LPSolution:
    """Largest four-outcome test value after detectors, over MDL-violating NS behaviors.

    The strict violation ``MDL > 0`` is imposed as ``MDL >= epsilon * l``.
    The positive part of every MDL expression carries a factor l, so the
    margin is relative; at l = 0 this is the closure ``MDL >= 0``.
    """
    c_mdl, c0 = _mdl_constraint(ineq, l, w)
    objective = sauer_row() @ detector_matrix(DetectorParams(eta, delta))
    lp = LinearProgram(
        objective,
        _NS_A, _NS_B,
        A_ub=-c_mdl[None, :],
        b_ub=[c0 - epsilon * l],
    )
    return lp_max(lp)


@dataclass(frozen=True)
class ScanRow:
    delta: float
    eta_min: float | None
    optimum: float | None
    maximizing_behavior: Behavior | None


@dataclass(frozen=True)
class ScanResult:
    rows: tuple[ScanRow, ...]
    meta: dict = field(default_factory=dict)

    def etas(self) -> np.ndarray:
        return np.array([np.nan if r.eta_min is None else r.eta_min for r in self.rows])

    def deltas(self) -> np.ndarray:
        return np.array([r.delta for r in self.rows])


def min_efficiency(
    delta: float,
    ineq: Ineq = "prblg",
    l: float = 0.0,
    w: float = 0.0,
    epsilon: float = 1e-6,
    eta_step: float = 0.01,
    tol: float = 1e-4,
) -> ScanRow:
    """Smallest eta whose optimum is positive: coarse grid, then bisection to ``tol``.

    Raises ScanError if positivity along the grid is not monotone in eta and
    InfeasibleError if no ideal behavior violates the MDL inequality.
    """
    def optimum(eta):
        return max_observed_violation(eta, delta, ineq, l, w, epsilon)

    grid = np.linspace(0.0, 1.0, int(round(1 / eta_step)) + 1)
    positive = np.array([optimum(e).value > POSITIVE_TOL for e in grid])
    if not positive.any():
        return ScanRow(delta, None, None, None)
    first = int(np.argmax(positive))
    if not positive[first:].all():
        drop = grid[first + int(np.argmin(positive[first:]))]
        raise ScanError(f"optimum turns nonpositive again at eta={drop:.4f} (delta={delta})")
    hi = float(grid[first])
    lo = float(grid[first - 1]) if first else hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if optimum(mid).value > POSITIVE_TOL:
            hi = mid
        else:
            lo = mid
    sol = optimum(hi)
    return ScanRow(delta, hi, sol.value, Behavior.from_vector(sol.x))


def min_efficiency_prblg(delta: float, l: float, epsilon: float = 1e-6, **kw) -> ScanRow:
    return min_efficiency(delta, "prblg", l, 0.0, epsilon, **kw)


def min_efficiency_zrlh(delta: float, l: float, w: float, epsilon: float = 1e-6, **kw) -> ScanRow:
    return min_efficiency(delta, "zrlh", l, w, epsilon, **kw)


def _workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1"))
    return max(1, workers)


def scan_detectors(
    deltas: Sequence[float],
    ineq: Ineq = "prblg",
    l: float = 0.0,
    w: float = 0.0,
    epsilon: float = 1e-6,
    eta_step: float = 0.01,
    tol: float = 1e-4,
    workers: int | None = None,
) -> ScanResult:
    """Minimum efficiency for every delta; results keep grid order."""
    job = partial(min_efficiency, ineq=ineq, l=l, w=w, epsilon=epsilon, eta_step=eta_step, tol=tol)
    deltas = [float(d) for d in deltas]
    n = _workers(workers)
    if n > 1 and len(deltas) > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            rows = tuple(pool.map(job, deltas))
    else:
        rows = tuple(job(d) for d in deltas)
    meta = dict(ineq=ineq, l=l, w=w if ineq == "zrlh" else 0.0, epsilon=epsilon, eta_step=eta_step, tol=tol)
    return ScanResult(rows, meta)


# -- fixed quantum behavior under detectors -----------------------------------


@dataclass(frozen=True)
class RegionSamples:
    eta: np.ndarray  # [n_eta]
    delta: np.ndarray  # [n_delta]
    value: np.ndarray  # [n_eta, n_delta], four-outcome test value

    @property
    def in_region(self) -> np.ndarray:
        return self.value > 0

    def boundary_eta(self, j: int = 0) -> float | None:
        """Smallest sampled eta inside the region at ``delta[j]``."""
        inside = np.flatnonzero(self.in_region[:, j])
        return float(self.eta[inside[0]]) if inside.size else None


def zrlh_detector_region(theta: float, etas: Sequence[float], deltas: Sequence[float]) -> RegionSamples:
    b = zrlh_behavior(theta)
    etas = np.asarray(etas, dtype=float)
    deltas = np.asarray(deltas, dtype=float)
    vals = np.array(
        [[sauer_lhs(apply_detectors(b, DetectorParams(e, d))) for d in deltas] for e in etas]
    )
    return RegionSamples(etas, deltas, vals)


def zrlh_critical_eta(theta: float, delta: float = 0.0, tol: float = 1e-10) -> float | None:
    """Bisection for the efficiency where the detector-mapped behavior turns nonlocal."""
    b = zrlh_behavior(theta)

    def f(e):
        return sauer_lhs(apply_detectors(b, DetectorParams(e, delta)))

    if f(1.0) <= 0:
        return None
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    return hi


# -- tilted Bell measurement-dependence sweeps ---------------------------------


def critical_M_curve(alphas: Sequence[float], beta: float = 0.0) -> dict[str, np.ndarray]:
    alphas = np.asarray(alphas, dtype=float)
    out = {"alpha": alphas}
    for mode in ("symmetric", "alice_only", "bob_only"):
        out[mode] = np.array([critical_M(TiltedParams(a, beta), mode) for a in alphas])
    return out


@dataclass(frozen=True)
class MDRegion:
    I_values: np.ndarray
    M1: np.ndarray
    M2: np.ndarray
    nonlocal_: np.ndarray  # [n_I, n_M1, n_M2]


def md_region_grid(t: TiltedParams, I_values: Sequence[float], M1: Sequence[float], M2: Sequence[float] | None = None) -> MDRegion:
    """Label every (M1, M2) grid point by whether each tilted value I is MD-nonlocal."""
    I_values = np.asarray(I_values, dtype=float)
    M1 = np.asarray(M1, dtype=float)
    M2 = M1 if M2 is None else np.asarray(M2, dtype=float)
    ns = tilted_ns_bound(t)
    if np.any(I_values > ns + 1e-12):
        raise ValueError(f"tilted values above the no-signalling bound {ns}")
    lab = np.array(
        [[[md_nonlocal(I, t, MDMeasures(m1, m2)) for m2 in M2] for m1 in M1] for I in I_values]
    )
    return MDRegion(I_values, M1, M2, lab)


def md_region_boundary(t: TiltedParams, I: float, M1: float) -> float | None:
    """M2 on the curve alpha (M1 + min(M1, M2)) + M2 = I - beta - 2 alpha, if any in [0, 2]."""
    gap = I - t.beta - 2 * t.alpha
    a = t.alpha
    # branch M2 <= M1: a*M1 + (a + 1) M2 = gap
    m2 = (gap - a * M1) / (a + 1)
    if 0 <= m2 <= M1:
        return m2
    # branch M2 >= M1: 2 a M1 + M2 = gap
    m2 = gap - 2 * a * M1
    if M1 <= m2 <= 2:
        return m2
    return None
