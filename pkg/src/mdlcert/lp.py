"""Dense two-phase simplex for the small linear programs used by the scans.

Programs have the form::

    maximize    c @ x
    subject to  A_eq @ x == b_eq,  A_ub @ x <= b_ub,  x >= 0

Pivoting follows Bland's rule (lowest eligible index enters, ties in the ratio
test go to the lowest basic index), so results are deterministic and cycling
cannot occur. Rows are scaled to unit max-norm before solving.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

PIVOT_TOL = 1e-10
FEAS_TOL = 1e-9


class InfeasibleError(ArithmeticError):
    pass


class UnboundedError(ArithmeticError):
    pass


def _rows(a, n):
    if a is None:
        return np.zeros((0, n))
    return np.atleast_2d(np.asarray(a, dtype=float)).reshape(-1, n)


@dataclass(frozen=True, eq=False)
class LinearProgram:
    objective: np.ndarray
    A_eq: np.ndarray | None = None
    b_eq: np.ndarray | None = None
    A_ub: np.ndarray | None = None
    b_ub: np.ndarray | None = None
    dim: int = field(init=False)

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float).reshape(-1)
        n = c.size
        A_eq, A_ub = _rows(self.A_eq, n), _rows(self.A_ub, n)
        b_eq = np.zeros(0) if self.b_eq is None else np.asarray(self.b_eq, dtype=float).reshape(-1)
        b_ub = np.zeros(0) if self.b_ub is None else np.asarray(self.b_ub, dtype=float).reshape(-1)
        if b_eq.size != A_eq.shape[0] or b_ub.size != A_ub.shape[0]:
            raise ValueError("constraint rows and right-hand sides disagree in length")
        for arr in (c, A_eq, A_ub, b_eq, b_ub):
            if not np.all(np.isfinite(arr)):
                raise ValueError("non-finite coefficient")
        for name, val in (("objective", c), ("A_eq", A_eq), ("b_eq", b_eq), ("A_ub", A_ub), ("b_ub", b_ub)):
            object.__setattr__(self, name, val)
        object.__setattr__(self, "dim", n)


@dataclass(frozen=True)
class LPSolution:
    value: float
    x: np.ndarray


def _pivot(T, basis, r, j):
    T[r] /= T[r, j]
    col = T[:, j].copy()
    col[r] = 0.0
    T -= np.outer(col, T[r])
    basis[r] = j


def _run(T, basis, n_cols):
    """Maximize the objective held in the last row (as reduced costs)."""
    m = T.shape[0] - 1
    while True:
        cost = T[-1, :n_cols]
        cand = np.flatnonzero(cost > PIVOT_TOL)
        if cand.size == 0:
            return
        j = cand[0]
        col = T[:m, j]
        pos = np.flatnonzero(col > PIVOT_TOL)
        if pos.size == 0:
            raise UnboundedError("objective unbounded on the feasible set")
        ratios = T[pos, -1] / col[pos]
        best = ratios.min()
        ties = pos[ratios <= best + PIVOT_TOL * max(1.0, abs(best))]
        r = ties[np.argmin(basis[ties])]
        _pivot(T, basis, r, j)


def lp_max(lp: LinearProgram) -> LPSolution:
    """Global maximum of a linear objective; raises InfeasibleError / UnboundedError."""
    n = lp.dim
    m_eq, m_ub = lp.A_eq.shape[0], lp.A_ub.shape[0]
    m = m_eq + m_ub
    A = np.zeros((m, n + m_ub))
    A[:m_eq, :n] = lp.A_eq
    A[m_eq:, :n] = lp.A_ub
    A[m_eq:, n:] = np.eye(m_ub)
    b = np.concatenate([lp.b_eq, lp.b_ub])

    scale = np.abs(A).max(axis=1)
    empty = scale == 0
    if np.any(np.abs(b[empty]) > FEAS_TOL):
        raise InfeasibleError("constant constraint row cannot be satisfied")
    A, b, scale = A[~empty], b[~empty], scale[~empty]
    A /= scale[:, None]
    b = b / scale
    neg = b < 0
    A[neg] *= -1
    b[neg] *= -1
    m, n_struct = A.shape

    # Slack columns that are still +unit vectors start in the basis; others get an artificial.
    basis = np.full(m, -1)
    for i in range(m):
        j = np.flatnonzero(np.abs(A[i, n:]) > 0)
        if j.size == 1 and A[i, n + j[0]] > 0:
            k = n + j[0]
            f = A[i, k]
            A[i] /= f
            b[i] /= f
            basis[i] = k
    art_rows = np.flatnonzero(basis < 0)
    n_art = art_rows.size
    T = np.zeros((m + 1, n_struct + n_art + 1))
    T[:m, :n_struct] = A
    T[:m, -1] = b
    for k, i in enumerate(art_rows):
        T[i, n_struct + k] = 1.0
        basis[i] = n_struct + k

    if n_art:
        # phase 1: maximize -sum(artificials)
        T[-1, :] = 0.0
        T[-1, n_struct:n_struct + n_art] = -1.0
        for i in art_rows:
            T[-1] += T[i]
        T[-1, n_struct:n_struct + n_art] = 0.0
        _run(T, basis, n_struct + n_art)
        if T[-1, -1] > FEAS_TOL:
            raise InfeasibleError("no point satisfies the constraints")
        keep = np.ones(m, dtype=bool)
        for i in range(m):
            if basis[i] >= n_struct:
                row = np.abs(T[i, :n_struct])
                j = int(np.argmax(row))
                if row[j] > PIVOT_TOL:
                    _pivot(T, basis, i, j)
                else:
                    keep[i] = False  # redundant row
        T = np.vstack([T[:m][keep], T[-1:]])
        basis = basis[keep]
        T = np.delete(T, np.s_[n_struct:n_struct + n_art], axis=1)
        m = T.shape[0] - 1

    # phase 2: reduced costs of the real objective
    c = np.zeros(n_struct)
    c[:n] = lp.objective
    T[-1, :] = 0.0
    T[-1, :n_struct] = c
    for i in range(m):
        T[-1] -= c[basis[i]] * T[i]
    _run(T, basis, n_struct)

    x = np.zeros(n_struct)
    x[basis] = T[:m, -1]
    x = np.where(np.abs(x) < PIVOT_TOL, 0.0, x)[:n]
    return LPSolution(float(lp.objective @ x), x)
