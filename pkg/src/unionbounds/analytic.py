"""Closed-form lower bounds on ``P(A_1 | ... | A_N)``.

All of them except GK use only ``alpha_i = P(A_i)`` and ``gamma_i = sum_j P(A_i & A_j)``.
They share one kernel: the minimum of ``sum_k a(k)/k`` over nonnegative
``a(1..cap)`` with fixed ``sum a(k)`` and ``sum k*a(k)``
(see :func:`two_moment_min`).
"""

from __future__ import annotations

import math

import numpy as np

from .exceptions import InfeasibleSummaryError
from .system import SUMMARY_TOL

SNAP_TOL = 1e-9
ZERO_MASS = 1e-12
GK_EIG_CUTOFF = 1e-10


def _snap(x):
    """Nearest integer if ``x`` is within SNAP_TOL of it, else None."""
    n = round(x)
    return int(n) if abs(x - n) <= SNAP_TOL else None


def _floor(x):
    n = _snap(x)
    return n if n is not None else math.floor(x)


def chi(x):
    """``floor(x)``, except one less when ``x`` is an integer ``>= 2``."""
    if x < 1 - SNAP_TOL:
        raise ValueError(f"chi is defined for x >= 1, got {x!r}")
    n = _snap(x)
    if n is not None:
        return n - 1 if n >= 2 else 1
    return math.floor(x)


def _kernel(alpha, gamma, r):
    ratio = gamma / alpha
    n = _snap(ratio)
    if n is not None:
        # both neighbouring pieces meet here; evaluate once so floor and chi agree exactly
        return alpha / n
    return (1.0 / r - (ratio - r) / ((1 + r) * r)) * alpha


def _ratio(alpha, gamma, cap, tol=SNAP_TOL):
    ratio = gamma / alpha
    if ratio < 1 - tol or ratio > cap + tol:
        raise ValueError(f"gamma/alpha = {ratio!r} outside [1, {cap}]")
    return min(max(ratio, 1.0), float(cap))


def two_moment_min(alpha, gamma, cap):
    """Minimum of ``sum_k a(k)/k`` given ``sum a(k) = alpha``, ``sum k a(k) = gamma``, ``k <= cap``.

    The optimum puts all mass on the two degrees bracketing ``gamma/alpha``.
    """
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha!r}")
    if alpha == 0:
        return 0.0
    ratio = _ratio(alpha, gamma, cap)
    return _kernel(alpha, ratio * alpha, _floor(ratio))


def _chi_two_moment_min(alpha, gamma):
    # a shifted mass of rounding size contributes at most itself
    if alpha <= 0:
        return 0.0
    ratio = max(gamma / alpha, 1.0)
    return _kernel(alpha, ratio * alpha, chi(ratio))


def _summary_arrays(s):
    s.check()
    return s.alpha, s.gamma, s.n_events


def kat_bound(s):
    """Sum over events of the per-event two-moment minimum."""
    alpha, gamma, n = _summary_arrays(s)
    return float(sum(two_moment_min(a, min(max(g, a), n * a), n) for a, g in zip(alpha, gamma) if a > 0))


def shared_top_mass(s):
    """Smallest common degree-N mass any realizing family must carry: ``max(0, max_i[gamma_i - (N-1) alpha_i])``."""
    n = s.n_events
    return max(0.0, float(np.max(s.gamma - (n - 1) * s.alpha)))


def shift_interval(alpha, gamma, n):
    """Range of the shared degree-N mass ``x`` for which one event's subproblem is feasible."""
    lo = max(0.0, gamma - (n - 1) * alpha)
    hi = (gamma - alpha) / (n - 1)
    return lo, hi


def _check_shift(s):
    alpha, gamma, n = _summary_arrays(s)
    delta = shared_top_mass(s)
    if n > 1:
        limit = float(np.min(s.beta)) / (n - 1)
        if delta > limit + SUMMARY_TOL:
            raise InfeasibleSummaryError(
                f"infeasible summary: shared degree-{n} mass {delta!r} exceeds min beta/(N-1) = {limit!r}"
            )
    return alpha, gamma, n, delta


def yat_bound(s):
    """KAT improved by forcing the shared degree-N mass and using ``chi`` in place of floor."""
    alpha, gamma, n, delta = _check_shift(s)
    if n == 1:
        return float(alpha[0])
    total = delta
    for a, g in zip(alpha, gamma):
        total += _chi_two_moment_min(a - delta, g - n * delta)
    return float(total)


def shifted_event_min(x, alpha, gamma, n):
    """Best value of one event's share when ``x`` of its mass sits at degree ``n``.

    Valid for ``max(0, gamma - (n-1) alpha) <= x <= (gamma - alpha)/(n-1)``.
    """
    if n < 2:
        raise ValueError("needs at least two events")
    lo, hi = shift_interval(alpha, gamma, n)
    if x < lo - SNAP_TOL or x > hi + SNAP_TOL:
        raise ValueError(f"x={x!r} outside feasible interval [{lo!r}, {hi!r}]")
    return _chi_two_moment_min(alpha - x, gamma - n * x) + x / n


def shifted_event_slope(x, alpha, gamma, n):
    """Derivative of :func:`shifted_event_min` in ``x`` (one-sided from the right at breakpoints)."""
    rest = alpha - x
    if rest <= ZERO_MASS:
        return 1.0 / n
    c = chi(max((gamma - n * x) / rest, 1.0))
    return (n - c) * (n - c - 1) / (n * c * (c + 1))


def gap_lower_bound(s):
    """Lower bound on ``yat_bound(s) - kat_bound(s)`` from convexity of the per-event shares."""
    alpha, gamma, n, delta = _check_shift(s)
    if delta == 0.0:
        return 0.0
    acc = 0.0
    for a, g in zip(alpha, gamma):
        if a <= 0:
            continue
        c = chi(_ratio(a, g, n))
        acc += (n - c) * (n - c - 1) / (c * (c + 1))
    return acc * delta / n


def kat_plus_gap_bound(s):
    return kat_bound(s) + gap_lower_bound(s)


def ds_bound(s):
    """Dawson-Sankoff: the two-moment minimum over aggregate moments ``S1 = sum alpha``, ``S2 = sum gamma``."""
    alpha, gamma, n = _summary_arrays(s)
    s1, s2 = float(alpha.sum()), float(gamma.sum())
    if s1 == 0:
        return 0.0
    return two_moment_min(s1, s2, n)


def de_caen_bound(s):
    alpha, gamma, _ = _summary_arrays(s)
    return float(sum(a * a / g for a, g in zip(alpha, gamma) if a > 0))


def symmetric_pinv(b, cutoff=GK_EIG_CUTOFF):
    """Pseudo-inverse of a symmetric PSD matrix via eigendecomposition.

    Eigenvalues below ``cutoff * max_eigenvalue`` are discarded.
    """
    b = np.asarray(b, dtype=float)
    w, v = np.linalg.eigh(b)
    top = float(w.max()) if w.size else 0.0
    if top <= 0:
        return np.zeros_like(b)
    if w.min() < -cutoff * max(1.0, top):
        raise ValueError(f"matrix is not positive semidefinite (min eigenvalue {w.min()!r})")
    keep = w >= cutoff * top
    return (v[:, keep] / w[keep]) @ v[:, keep].T


def gk_bound(pairwise, alpha):
    """Gallot-Kounias bound ``alpha^T B^+ alpha`` from the full pairwise intersection matrix ``B``."""
    b = np.asarray(pairwise, dtype=float)
    alpha = np.asarray(alpha, dtype=float).reshape(-1)
    if b.ndim != 2 or b.shape != (alpha.size, alpha.size):
        raise ValueError(f"pairwise matrix shape {b.shape} does not match {alpha.size} events")
    if np.max(np.abs(b - b.T), initial=0.0) > 1e-12:
        raise ValueError("pairwise matrix is not symmetric")
    if np.max(np.abs(np.diag(b) - alpha), initial=0.0) > 1e-12:
        raise ValueError("pairwise diagonal must equal alpha")
    return float(alpha @ symmetric_pinv(b) @ alpha)
