"""Bounds obtained by solving LPs over degree decompositions ``a_i(k)``.

Variable layout (full, ``N*N`` variables): ``a_i(k)`` at index ``i*N + (k-1)``.

Variable layout (reduced, ``N*N - N + 1`` variables): ``a_i(k)`` for ``k < N``
at index ``i*(N-1) + (k-1)``, followed by one shared variable for
``a_1(N) = ... = a_N(N)``, which is what the coupling constraints force at
``k = N``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .simplex import FEAS_TOL, INFEASIBLE, OPTIMAL, LinearProgram, solve
from .system import DegreeDecomposition

NOT_REALIZABLE = "summary not realizable by any event family"


@dataclass(frozen=True, eq=False)
class LpBoundResult:
    status: str
    value: float
    decomposition: DegreeDecomposition | None
    message: str = ""

    @property
    def optimal(self):
        return self.status == OPTIMAL


def _infeasible(message=NOT_REALIZABLE):
    return LpBoundResult(INFEASIBLE, float("nan"), None, message)


def _full_rows(n, alpha, gamma):
    """Per-event moment equalities for the full layout."""
    a_eq = np.zeros((2 * n, n * n))
    degrees = np.arange(1, n + 1)
    for i in range(n):
        a_eq[2 * i, i * n:(i + 1) * n] = 1.0
        a_eq[2 * i + 1, i * n:(i + 1) * n] = degrees
    b_eq = np.empty(2 * n)
    b_eq[0::2] = alpha
    b_eq[1::2] = gamma
    return a_eq, b_eq


def _full_coupling(n, degrees):
    """Rows for ``sum_i a_i(k) - k a_j(k) >= 0``, full layout."""
    rows = []
    for k in degrees:
        for j in range(n):
            row = np.zeros(n * n)
            row[k - 1::n] = 1.0
            row[j * n + k - 1] -= k
            rows.append(row)
    return np.array(rows).reshape(-1, n * n)


def _full_objective(n):
    return np.tile(1.0 / np.arange(1, n + 1), n)


def _reduced_index(n, i, k):
    return n * (n - 1) if k == n else i * (n - 1) + (k - 1)


def _reduced_objective(n):
    c = np.zeros(n * n - n + 1)
    for i in range(n):
        for k in range(1, n):
            c[_reduced_index(n, i, k)] = 1.0 / k
    c[-1] = 1.0  # N copies of x/N
    return c


def _reduced_rows(n, alpha, gamma):
    v = n * n - n + 1
    a_eq = np.zeros((2 * n, v))
    for i in range(n):
        for k in range(1, n + 1):
            col = _reduced_index(n, i, k)
            a_eq[2 * i, col] += 1.0
            a_eq[2 * i + 1, col] += k
    b_eq = np.empty(2 * n)
    b_eq[0::2] = alpha
    b_eq[1::2] = gamma
    return a_eq, b_eq


def _reduced_coupling(n):
    # k = 1 rows are implied by nonnegativity; k = N is built into the layout
    v = n * n - n + 1
    rows = []
    for k in range(2, n):
        for j in range(n):
            row = np.zeros(v)
            for i in range(n):
                row[_reduced_index(n, i, k)] += 1.0
            row[_reduced_index(n, j, k)] -= k
            rows.append(row)
    return np.array(rows).reshape(-1, v)


def _expand_reduced(n, x):
    a = np.zeros((n, n))
    for i in range(n):
        for k in range(1, n):
            a[i, k - 1] = x[_reduced_index(n, i, k)]
    a[:, n - 1] = x[-1]
    return a


def _run(lp, tol, to_matrix, message=NOT_REALIZABLE):
    sol = solve(lp, feas_tol=tol)
    if not sol.optimal:
        return _infeasible(message)
    return LpBoundResult(OPTIMAL, sol.value, DegreeDecomposition(to_matrix(sol.point)))


def kat_lp(s, *, tol=FEAS_TOL):
    """Minimize ``sum a_i(k)/k`` under per-event moment constraints only."""
    s = s.check()
    n = s.n_events
    a_eq, b_eq = _full_rows(n, s.alpha, s.gamma)
    lp = LinearProgram(_full_objective(n), "minimize", a_eq, b_eq)
    return _run(lp, tol, lambda x: x.reshape(n, n), "moment constraints infeasible")


def _lower_lp(s, *, couple_below_top, sense="minimize", cap_union=False):
    n = s.n_events
    a_eq, b_eq = _reduced_rows(n, s.alpha, s.gamma)
    c = _reduced_objective(n)
    a_ge = _reduced_coupling(n) if couple_below_top else np.zeros((0, c.size))
    b_ge = np.zeros(a_ge.shape[0])
    if cap_union:
        a_ge = np.vstack([a_ge, -c])
        b_ge = np.append(b_ge, -1.0)
    return LinearProgram(c, sense, a_eq, b_eq, a_ge, b_ge)


def optimal_lower_lp(s, *, tol=FEAS_TOL):
    """Optimal lower bound among all bounds that use only ``alpha`` and ``gamma``."""
    s = s.check()
    n = s.n_events
    return _run(_lower_lp(s, couple_below_top=True), tol, lambda x: _expand_reduced(n, x))


def optimal_lower_lp_full(s, *, tol=FEAS_TOL):
    """Same LP as :func:`optimal_lower_lp` without the shared-variable reduction (N*N variables)."""
    s = s.check()
    n = s.n_events
    a_eq, b_eq = _full_rows(n, s.alpha, s.gamma)
    a_ge = _full_coupling(n, range(1, n + 1))
    lp = LinearProgram(_full_objective(n), "minimize", a_eq, b_eq, a_ge, np.zeros(a_ge.shape[0]))
    return _run(lp, tol, lambda x: x.reshape(n, n))


def yat_relaxed_lp(s, *, tol=FEAS_TOL):
    """Moment constraints plus only the degree-N coupling; its optimum is the closed-form YAT bound."""
    s = s.check()
    n = s.n_events
    return _run(_lower_lp(s, couple_below_top=False), tol, lambda x: _expand_reduced(n, x))


def optimal_upper_lp(s, *, tol=FEAS_TOL):
    """Optimal upper bound: maximize the union over realizable decompositions, capped at 1."""
    s = s.check()
    n = s.n_events
    lp = _lower_lp(s, couple_below_top=True, sense="maximize", cap_union=True)
    return _run(lp, tol, lambda x: _expand_reduced(n, x))


def alpha_only_lp(alpha, sense, *, tol=FEAS_TOL):
    """Optimal bound using only ``P(A_i)``, as an LP over the full layout."""
    alpha = np.asarray(alpha, dtype=float).reshape(-1)
    n = alpha.size
    a_eq = np.zeros((n, n * n))
    for i in range(n):
        a_eq[i, i * n:(i + 1) * n] = 1.0
    c = _full_objective(n)
    a_ge = np.vstack([_full_coupling(n, range(2, n + 1)), -c])
    b_ge = np.append(np.zeros(a_ge.shape[0] - 1), -1.0)
    lp = LinearProgram(c, sense, a_eq, alpha, a_ge, b_ge)
    return _run(lp, tol, lambda x: x.reshape(n, n), "alpha outside [0, 1]")


def alpha_only_bounds(alpha, *, cross_check=True, tol=FEAS_TOL):
    """``(max_i alpha_i, min(sum alpha_i, 1))``, optionally confirmed against the LP."""
    alpha = np.asarray(alpha, dtype=float).reshape(-1)
    if alpha.size == 0 or np.any(alpha < -tol) or np.any(alpha > 1 + tol):
        raise ValueError("alpha entries must lie in [0, 1]")
    lower = float(alpha.max())
    upper = min(float(alpha.sum()), 1.0)
    if cross_check:
        for name, closed, sense in (("lower", lower, "minimize"), ("upper", upper, "maximize")):
            res = alpha_only_lp(alpha, sense, tol=tol)
            if not res.optimal or abs(res.value - closed) > 1e-9:
                raise RuntimeError(f"alpha-only {name} bound disagrees with LP: {closed!r} vs {res.value!r}")
    return lower, upper


def ds_lp(s, *, tol=FEAS_TOL):
    """Dawson-Sankoff bound as an LP over aggregate masses ``a(k)``, spread evenly over events."""
    s = s.check()
    n = s.n_events
    degrees = np.arange(1, n + 1, dtype=float)
    lp = LinearProgram(
        1.0 / degrees,
        "minimize",
        np.vstack([np.ones(n), degrees]),
        [float(s.alpha.sum()), float(s.gamma.sum())],
    )
    return _run(lp, tol, lambda x: np.tile(x / n, (n, 1)), "aggregate moments infeasible")

