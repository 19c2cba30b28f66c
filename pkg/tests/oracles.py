"""Independent brute-force oracles used by the tests."""

import itertools

import numpy as np


def vertex_enumeration(lp, tol=1e-9):
    """Best vertex of ``lp`` by trying every set of active inequalities.

    Returns ``None`` when no vertex exists (infeasible). Assumes the feasible
    region is bounded, which every caller guarantees with a cap constraint.
    """
    n = lp.n_vars
    ineq_a = np.vstack([lp.a_ge, np.eye(n)])
    ineq_b = np.concatenate([lp.b_ge, np.zeros(n)])
    sign = 1.0 if lp.sense == "minimize" else -1.0
    best = None
    for active in itertools.combinations(range(len(ineq_b)), max(0, n - lp.b_eq.size)):
        a = np.vstack([lp.a_eq, ineq_a[list(active)]])
        b = np.concatenate([lp.b_eq, ineq_b[list(active)]])
        if np.linalg.matrix_rank(a) < n:
            continue
        x, *_ = np.linalg.lstsq(a, b, rcond=None)
        if np.max(np.abs(a @ x - b), initial=0.0) > tol:
            continue
        if np.any(ineq_a @ x - ineq_b < -tol):
            continue
        if lp.b_eq.size and np.max(np.abs(lp.a_eq @ x - lp.b_eq)) > tol:
            continue
        value = float(lp.objective @ x)
        if best is None or sign * value < sign * best[0] - 1e-12:
            best = (value, x)
    return best


def two_moment_enumeration(alpha, gamma, cap):
    """Minimum of sum a(k)/k over the two-moment polytope by trying every support pair.

    Every vertex has at most two nonzero masses, so enumerating pairs
    ``k1 <= k2`` (and single-degree supports) is exhaustive.
    """
    if alpha == 0:
        return 0.0, None
    best = (np.inf, None)
    for k1 in range(1, cap + 1):
        for k2 in range(k1, cap + 1):
            if k1 == k2:
                if abs(gamma - k1 * alpha) <= 1e-12:
                    val = alpha / k1
                else:
                    continue
            else:
                x1 = (k2 * alpha - gamma) / (k2 - k1)
                x2 = (gamma - k1 * alpha) / (k2 - k1)
                if x1 < -1e-15 or x2 < -1e-15:
                    continue
                val = x1 / k1 + x2 / k2
            if val < best[0]:
                best = (val, (k1, k2))
    return best
