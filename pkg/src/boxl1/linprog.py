"""Dense bounded-variable primal simplex and the two LPs built on it.

``solve_lp`` handles ``min c.x`` subject to ``A x = b`` and
``lower <= x <= upper`` with possibly infinite bounds.  Variables are
shifted so that every column lives in ``[0, u]``; free columns are split.
Phase 1 adds one artificial per row.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .angles import ModelKind, ProblemDims
from .errors import Infeasible, IterationLimit, RankDeficient

__all__ = [
    "LpStatus",
    "LpProblem",
    "LpSolution",
    "solve_lp",
    "l1_box_recover",
    "failure_certificate",
    "planted_blocks",
]

_PIVOT_TOL = 1e-9
_OPT_TOL = 1e-9
_BLAND_AFTER = 50  # consecutive degenerate pivots before switching rules


class LpStatus(enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"
    ITERATION_LIMIT = "IterationLimit"


@dataclass
class LpProblem:
    objective: np.ndarray
    eq_matrix: np.ndarray
    eq_rhs: np.ndarray
    lower: np.ndarray | None = None
    upper: np.ndarray | None = None

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float).ravel()
        nv = self.objective.size
        self.eq_matrix = np.asarray(self.eq_matrix, dtype=float).reshape(-1, nv)
        self.eq_rhs = np.asarray(self.eq_rhs, dtype=float).ravel()
        if self.eq_rhs.size != self.eq_matrix.shape[0]:
            raise ValueError("eq_rhs length does not match eq_matrix rows")
        self.lower = np.zeros(nv) if self.lower is None else np.broadcast_to(np.asarray(self.lower, float), (nv,)).copy()
        self.upper = np.full(nv, np.inf) if self.upper is None else np.broadcast_to(np.asarray(self.upper, float), (nv,)).copy()
        if np.any(self.lower > self.upper):
            raise ValueError("lower bound exceeds upper bound")
        if np.any(self.lower == np.inf) or np.any(self.upper == -np.inf):
            raise ValueError("bounds must admit a finite value")


@dataclass
class LpSolution:
    status: LpStatus
    x: np.ndarray
    objective_value: float
    iterations: int


class _Tableau:
    """``B^-1 [M | I]`` with basic values, bound status and reduced costs."""

    def __init__(self, M, r, ub):
        m, n = M.shape
        self.n = n
        self.full = np.hstack([M, np.eye(m)])
        self.T = self.full.copy()
        self.ub = np.concatenate([ub, np.full(m, np.inf)])
        self.basis = np.arange(n, n + m)
        self.is_basic = np.zeros(n + m, bool)
        self.is_basic[n:] = True
        self.at_upper = np.zeros(n + m, bool)
        self.xB = r.copy()
        self.r = r

    def pivot(self, row, col):
        T = self.T
        T[row] /= T[row, col]
        c = T[:, col].copy()
        c[row] = 0.0
        T -= np.outer(c, T[row])
        self.is_basic[self.basis[row]] = False
        self.basis[row] = col
        self.is_basic[col] = True

    def run(self, cost, allowed, max_iter):
        """Primal simplex on ``cost``; returns (status, iterations)."""
        d = cost - cost[self.basis] @ self.T
        degenerate = 0
        T, ub = self.T, self.ub
        for it in range(max_iter):
            free = allowed & ~self.is_basic
            up = self.at_upper
            elig = free & np.where(up, d > _OPT_TOL, d < -_OPT_TOL)
            if not elig.any():
                return LpStatus.OPTIMAL, it
            bland = degenerate >= _BLAND_AFTER
            if bland:
                j = int(np.flatnonzero(elig)[0])
            else:
                j = int(np.argmax(np.where(elig, np.abs(d), -1.0)))
            sgn = -1.0 if up[j] else 1.0
            col = sgn * T[:, j]
            ubB = ub[self.basis]
            ratios = np.full(col.size, np.inf)
            pos = col > _PIVOT_TOL
            neg = col < -_PIVOT_TOL
            ratios[pos] = np.maximum(self.xB[pos], 0.0) / col[pos]
            ratios[neg] = np.maximum(ubB[neg] - self.xB[neg], 0.0) / -col[neg]
            theta_row = ratios.min() if ratios.size else np.inf
            if not np.isfinite(theta_row) and not np.isfinite(ub[j]):
                return LpStatus.UNBOUNDED, it
            if ub[j] <= theta_row:
                theta = ub[j]
                self.xB -= theta * col
                up[j] = not up[j]
                degenerate = degenerate + 1 if theta <= 1e-12 else 0
                continue
            theta = theta_row
            ties = np.flatnonzero(ratios <= theta + 1e-12)
            if bland:
                r = int(ties[np.argmin(self.basis[ties])])
            else:
                r = int(ties[np.argmax(np.abs(col[ties]))])
            leaving = self.basis[r]
            self.xB -= theta * col
            entering_val = ub[j] - theta if up[j] else theta
            up[leaving] = col[r] < 0
            up[j] = False
            self.pivot(r, j)
            self.xB[r] = entering_val
            d -= d[j] * T[r]
            degenerate = degenerate + 1 if theta <= 1e-12 else 0
        return LpStatus.ITERATION_LIMIT, max_iter

    def values(self):
        z = np.where(self.at_upper & ~self.is_basic, self.ub, 0.0)
        z[~np.isfinite(z)] = 0.0
        z[self.basis] = 0.0
        rhs = self.r - self.full @ z
        B = self.full[:, self.basis]
        try:
            xb = np.linalg.solve(B, rhs)
        except np.linalg.LinAlgError:
            xb = self.xB
        z[self.basis] = xb
        return z


def solve_lp(p: LpProblem, feas_tol: float = 1e-9, max_iter: int = 10000) -> LpSolution:
    A = p.eq_matrix
    nv = p.objective.size
    lo, hi = p.lower, p.upper
    # column map: x_j = shift_j + sign_j * z_col
    cols, signs, shifts, ubs = [], [], np.zeros(nv), []
    for j in range(nv):
        if np.isfinite(lo[j]):
            cols.append(j); signs.append(1.0); shifts[j] = lo[j]; ubs.append(hi[j] - lo[j])
        elif np.isfinite(hi[j]):
            cols.append(j); signs.append(-1.0); shifts[j] = hi[j]; ubs.append(np.inf)
        else:
            cols.extend((j, j)); signs.extend((1.0, -1.0)); ubs.extend((np.inf, np.inf))
    cols = np.array(cols, dtype=int)
    signs = np.array(signs)
    ubs = np.array(ubs, dtype=float)
    M = A[:, cols] * signs
    c = p.objective[cols] * signs
    r = p.eq_rhs - A @ shifts
    flip = r < 0
    M[flip] *= -1.0
    r = np.abs(r)

    def to_x(z):
        x = shifts.copy()
        np.add.at(x, cols, signs * z[: cols.size])
        return x

    m, nz = M.shape
    tab = _Tableau(M, r, ubs)
    allowed = np.ones(nz + m, bool)
    cost1 = np.concatenate([np.zeros(nz), np.ones(m)])
    status, it1 = tab.run(cost1, allowed, max_iter)
    if status is LpStatus.ITERATION_LIMIT:
        return LpSolution(status, to_x(tab.values()), np.nan, it1)
    infeas = float(np.sum(tab.xB[tab.basis >= nz])) if m else 0.0
    if infeas > feas_tol * max(1.0, float(np.abs(r).max(initial=0.0))):
        return LpSolution(LpStatus.INFEASIBLE, to_x(tab.values()), np.nan, it1)
    # pivot zero-level artificials out where possible; the rest stay fixed at 0
    for row in range(m):
        if tab.basis[row] >= nz:
            cand = np.flatnonzero(~tab.is_basic[:nz] & (np.abs(tab.T[row, :nz]) > 1e-7))
            if cand.size:
                j = int(cand[np.argmax(np.abs(tab.T[row, cand]))])
                val = tab.ub[j] if tab.at_upper[j] else 0.0
                tab.at_upper[j] = False
                tab.pivot(row, j)
                tab.xB[row] = val
    tab.ub[nz:] = 0.0
    allowed[nz:] = False
    cost2 = np.concatenate([c, np.zeros(m)])
    status, it2 = tab.run(cost2, allowed, max_iter - it1)
    x = to_x(tab.values())
    return LpSolution(status, x, float(p.objective @ x), it1 + it2)


def _check_rank(A):
    m = A.shape[0]
    if m and np.linalg.matrix_rank(A) < m:
        raise RankDeficient(f"measurement matrix has rank < {m}")


def l1_box_recover(A, y, feas_tol: float = 1e-9) -> np.ndarray:
    """Minimiser of ``sum(x)`` over ``A x = y``, ``0 <= x <= 1``."""
    A = np.asarray(A, dtype=float)
    y = np.asarray(y, dtype=float)
    _check_rank(A)
    n = A.shape[1]
    sol = solve_lp(LpProblem(np.ones(n), A, y, np.zeros(n), np.ones(n)), feas_tol)
    if sol.status is LpStatus.INFEASIBLE:
        raise Infeasible("y is not attainable with x in the unit box")
    if sol.status is LpStatus.ITERATION_LIMIT:
        raise IterationLimit("simplex iteration limit reached")
    return sol.x


def planted_blocks(model: ModelKind, dims: ProblemDims):
    """Index arrays (negative, free, positive) of the canonical planted vector."""
    dims.check(model)
    n, k = dims.n, dims.k
    if model.is_box:
        km = model.k_mu
        return np.arange(km), np.arange(km, km + k), np.arange(km + k, n)
    return np.arange(k), np.arange(0), np.arange(k, n)


def failure_certificate(A, model: ModelKind, dims: ProblemDims, feas_tol: float = 1e-9) -> bool:
    """True when a null-space direction of ``A`` lets the l1 program move away
    from the planted vector without increasing its objective.

    Directions are normalised by ``|w_neg|_1 + |w_pos|_1 = 1``; the program
    fails iff ``min sum(w) <= 0``, reported through ``s = (1 - min)/2 >= 1/2``.
    Box vectors also fail when the interior columns alone are dependent.
    """
    A = np.asarray(A, dtype=float)
    m, n = A.shape
    if n != dims.n:
        raise ValueError(f"A has {n} columns, expected {dims.n}")
    _check_rank(A)
    if m == n:
        return False
    neg, free, pos = planted_blocks(model, dims)
    if free.size and (m < free.size or np.linalg.matrix_rank(A[:, free]) < free.size):
        return True
    norm_row = np.zeros(n)
    norm_row[neg] = -1.0
    norm_row[pos] = 1.0
    lower = np.full(n, -np.inf)
    upper = np.full(n, np.inf)
    upper[neg] = 0.0
    lower[pos] = 0.0
    prob = LpProblem(np.ones(n), np.vstack([A, norm_row]), np.append(np.zeros(m), 1.0), lower, upper)
    sol = solve_lp(prob, feas_tol)
    if sol.status is LpStatus.INFEASIBLE:
        return False
    if sol.status is LpStatus.UNBOUNDED:
        return True
    if sol.status is LpStatus.ITERATION_LIMIT:
        raise IterationLimit("simplex iteration limit reached")
    s = 0.5 * (1.0 - sol.objective_value)
    return bool(s >= 0.5 - feas_tol)
