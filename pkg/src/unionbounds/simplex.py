"""Dense two-phase simplex with Bland's anti-cycling rule.

Solves ``min/max c @ x`` subject to ``A_eq x = b_eq``, ``A_ge x >= b_ge`` and
``x >= 0``. Problems here have at most a few dozen variables, so the tableau
is a plain dense numpy array.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

PIVOT_TOL = 1e-10
FEAS_TOL = 1e-9

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """LP over nonnegative variables.

    Constraint blocks are given as matrices (one row per constraint); either
    block may be omitted.
    """

    objective: np.ndarray
    sense: str = "minimize"
    a_eq: np.ndarray | None = None
    b_eq: np.ndarray | None = None
    a_ge: np.ndarray | None = None
    b_ge: np.ndarray | None = None

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float).reshape(-1)
        if c.size < 1:
            raise ValueError("LP needs at least one variable")
        if self.sense not in ("minimize", "maximize"):
            raise ValueError(f"sense must be 'minimize' or 'maximize', got {self.sense!r}")
        object.__setattr__(self, "objective", c)
        for a_name, b_name in (("a_eq", "b_eq"), ("a_ge", "b_ge")):
            a, b = getattr(self, a_name), getattr(self, b_name)
            a = np.zeros((0, c.size)) if a is None else np.asarray(a, dtype=float).reshape(-1, c.size)
            b = np.zeros(0) if b is None else np.asarray(b, dtype=float).reshape(-1)
            if a.shape[0] != b.size:
                raise ValueError(f"{a_name} has {a.shape[0]} rows but {b_name} has {b.size} entries")
            object.__setattr__(self, a_name, a)
            object.__setattr__(self, b_name, b)

    @property
    def n_vars(self):
        return self.objective.size

    def residuals(self, x):
        """Worst equality residual and worst ``>=`` shortfall at ``x``."""
        x = np.asarray(x, dtype=float)
        eq = float(np.max(np.abs(self.a_eq @ x - self.b_eq))) if self.b_eq.size else 0.0
        ge = float(np.max(self.b_ge - self.a_ge @ x)) if self.b_ge.size else 0.0
        return eq, max(ge, 0.0)


@dataclass(frozen=True, eq=False)
class LpSolution:
    status: str
    value: float = float("nan")
    point: np.ndarray | None = field(default=None)
    iterations: int = 0

    @property
    def optimal(self):
        return self.status == OPTIMAL


class _Tableau:
    def __init__(self, table, basis):
        self.t = table
        self.basis = basis
        self.iterations = 0

    def pivot(self, r, j):
        t = self.t
        t[r] /= t[r, j]
        col = t[:, j].copy()
        col[r] = 0.0
        t -= np.outer(col, t[r])
        t[:, j] = 0.0
        t[r, j] = 1.0
        self.basis[r] = j
        self.iterations += 1

    def run(self, n_cols, pivot_tol, max_iter):
        """Bland's rule on the first ``n_cols`` columns. Returns False if unbounded."""
        t = self.t
        m = len(self.basis)
        while True:
            if self.iterations >= max_iter:
                raise RuntimeError("simplex iteration limit reached")
            cost = t[-1, :n_cols]
            candidates = np.flatnonzero(cost < -pivot_tol)
            if candidates.size == 0:
                return True
            j = int(candidates[0])
            col = t[:m, j]
            rows = np.flatnonzero(col > pivot_tol)
            if rows.size == 0:
                return False
            ratios = t[rows, -1] / col[rows]
            best = ratios.min()
            tied = rows[ratios <= best + 1e-12 * max(1.0, abs(best))]
            r = min(tied, key=lambda i: self.basis[i])
            self.pivot(int(r), j)


def solve(lp, *, pivot_tol=PIVOT_TOL, feas_tol=FEAS_TOL, max_iter=100_000):
    """Solve ``lp``; infeasibility and unboundedness are reported via ``status``."""
    c = lp.objective if lp.sense == "minimize" else -lp.objective
    n = lp.n_vars
    n_eq, n_ge = lp.b_eq.size, lp.b_ge.size
    m = n_eq + n_ge
    n_struct = n + n_ge  # original + surplus columns

    if m == 0:
        if np.any(c < -pivot_tol):
            return LpSolution(UNBOUNDED)
        x = np.zeros(n)
        return LpSolution(OPTIMAL, float(lp.objective @ x), x)

    a = np.zeros((m, n_struct))
    a[:n_eq, :n] = lp.a_eq
    a[n_eq:, :n] = lp.a_ge
    a[n_eq:, n:] = -np.eye(n_ge)
    b = np.concatenate([lp.b_eq, lp.b_ge])
    neg = b < 0
    a[neg] *= -1
    b[neg] *= -1

    # phase 1: one artificial per row
    t = np.zeros((m + 1, n_struct + m + 1))
    t[:m, :n_struct] = a
    t[:m, n_struct:n_struct + m] = np.eye(m)
    t[:m, -1] = b
    t[-1, :n_struct] = -a.sum(axis=0)
    t[-1, -1] = -b.sum()
    tab = _Tableau(t, list(range(n_struct, n_struct + m)))
    tab.run(n_struct, pivot_tol, max_iter)
    if -tab.t[-1, -1] > feas_tol:
        return LpSolution(INFEASIBLE, iterations=tab.iterations)

    # drive remaining (zero-level) artificials out of the basis, dropping redundant rows
    keep = []
    for r in range(m):
        if tab.basis[r] < n_struct:
            keep.append(r)
            continue
        nz = np.flatnonzero(np.abs(tab.t[r, :n_struct]) > pivot_tol)
        if nz.size:
            tab.pivot(r, int(nz[0]))
            keep.append(r)
    rows = keep + [m]
    t2 = np.hstack([tab.t[rows, :n_struct], tab.t[rows, -1:]])
    basis = [tab.basis[r] for r in keep]

    # phase 2
    cost = np.zeros(n_struct)
    cost[:n] = c
    cb = cost[basis]
    t2[-1, :n_struct] = cost - cb @ t2[:-1, :n_struct]
    t2[-1, -1] = -cb @ t2[:-1, -1]
    tab2 = _Tableau(t2, basis)
    tab2.iterations = tab.iterations
    if not tab2.run(n_struct, pivot_tol, max_iter):
        return LpSolution(UNBOUNDED, iterations=tab2.iterations)

    x = np.zeros(n_struct)
    for r, j in enumerate(tab2.basis):
        x[j] = tab2.t[r, -1]
    x = np.maximum(x[:n], 0.0)
    return LpSolution(OPTIMAL, float(lp.objective @ x), x, tab2.iterations)
