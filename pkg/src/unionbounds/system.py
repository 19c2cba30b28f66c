"""Finite probability systems and the partial information extracted from them.

A system is a list of elementary outcomes, each with a probability and the set
of events containing it. Mass not listed (``1 - sum(p)``) is an implicit
outcome that belongs to no event.

Everything here is computed by direct summation over outcomes, so these
functions double as the brute-force oracle for the bounding code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidSummaryError, InvalidSystemError

IDENTITY_TOL = 1e-12
MASS_TOL = 1e-12
# summaries built from 4-decimal data only need to be consistent to this level
SUMMARY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class FiniteProbabilitySystem:
    """Outcome probabilities plus an outcome-by-event membership matrix."""

    outcome_probs: np.ndarray
    membership: np.ndarray
    n_events: int

    def __post_init__(self):
        probs = np.asarray(self.outcome_probs, dtype=float).reshape(-1)
        membership = np.asarray(self.membership, dtype=bool)
        if membership.size == 0:
            membership = membership.reshape(len(probs), self.n_events)
        object.__setattr__(self, "outcome_probs", probs)
        object.__setattr__(self, "membership", membership)
        object.__setattr__(self, "n_events", int(self.n_events))

    @classmethod
    def from_outcomes(cls, n_events, outcomes):
        """Build from ``[(p, [event indices, 1-based]), ...]``."""
        probs = [float(p) for p, _ in outcomes]
        membership = np.zeros((len(outcomes), n_events), dtype=bool)
        for m, (_, events) in enumerate(outcomes):
            for e in events:
                if not 1 <= e <= n_events:
                    raise InvalidSystemError([f"outcome {m}: event index {e} out of range 1..{n_events}"])
                membership[m, e - 1] = True
        return cls(np.array(probs), membership, n_events)

    @property
    def n_outcomes(self):
        return len(self.outcome_probs)

    @property
    def degrees(self):
        """Number of events containing each outcome."""
        return self.membership.sum(axis=1)


@dataclass(frozen=True, eq=False)
class MomentSummary:
    """Per-event ``alpha_i = P(A_i)``, ``beta_i = sum_{j != i} P(A_i & A_j)`` and ``gamma = alpha + beta``."""

    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray

    @classmethod
    def from_alpha_gamma(cls, alpha, gamma):
        alpha = np.asarray(alpha, dtype=float).reshape(-1)
        gamma = np.asarray(gamma, dtype=float).reshape(-1)
        if alpha.shape != gamma.shape:
            raise InvalidSummaryError(f"alpha has {alpha.size} entries but gamma has {gamma.size}")
        return cls(alpha, gamma - alpha, gamma)

    @property
    def n_events(self):
        return len(self.alpha)

    def problems(self, tol=SUMMARY_TOL):
        """List every invariant violation; empty when the summary is consistent."""
        out = []
        n = self.n_events
        if n < 1:
            return ["summary has no events"]
        if not (self.alpha.shape == self.beta.shape == self.gamma.shape):
            return ["alpha, beta, gamma differ in length"]
        if not np.all(np.isfinite(self.alpha)) or not np.all(np.isfinite(self.gamma)):
            return ["non-finite entries"]
        if np.max(np.abs(self.alpha + self.beta - self.gamma)) > IDENTITY_TOL:
            out.append("gamma != alpha + beta")
        for i, (a, g) in enumerate(zip(self.alpha, self.gamma), start=1):
            if a < -tol or a > 1 + tol:
                out.append(f"alpha_{i}={a!r} outside [0, 1]")
            if g < a - tol:
                out.append(f"gamma_{i}={g!r} < alpha_{i}={a!r}")
            if g > n * a + tol:
                out.append(f"gamma_{i}={g!r} > N*alpha_{i}={n * a!r}")
        return out

    def check(self, tol=SUMMARY_TOL):
        problems = self.problems(tol)
        if problems:
            raise InvalidSummaryError("; ".join(problems))
        return self


@dataclass(frozen=True, eq=False)
class DegreeDecomposition:
    """``a[i, k-1]`` is the mass of event ``i`` carried by outcomes of degree ``k``.

    Entries down to ``-1e-12`` are treated as rounding noise and clamped to 0.
    """

    a: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"decomposition must be a non-empty square matrix, got shape {a.shape}")
        if np.any(a < -IDENTITY_TOL):
            raise ValueError("decomposition has negative entries")
        a[a < 0] = 0.0
        a.setflags(write=False)
        object.__setattr__(self, "a", a)

    @property
    def n_events(self):
        return self.a.shape[0]

    @property
    def degrees(self):
        return np.arange(1, self.n_events + 1)

    def union_probability(self):
        """``sum_i sum_k a_i(k) / k``."""
        return float(np.sum(self.a / self.degrees))

    def row_alpha(self):
        return self.a.sum(axis=1)

    def row_gamma(self):
        return self.a @ self.degrees

    def moment_summary(self):
        return MomentSummary.from_alpha_gamma(self.row_alpha(), self.row_gamma())


def validate(system):
    """Return all invariant violations of ``system``; an empty list means valid."""
    errors = []
    probs, membership = system.outcome_probs, system.membership
    if system.n_events < 1:
        errors.append("n_events must be positive")
    if membership.ndim != 2 or membership.shape != (len(probs), system.n_events):
        errors.append(
            f"membership shape {membership.shape} does not match "
            f"{len(probs)} outcomes x {system.n_events} events"
        )
    if not np.all(np.isfinite(probs)):
        errors.append("non-finite probability")
    for m, p in enumerate(probs):
        if p < 0:
            errors.append(f"negative probability at outcome {m}: {p!r}")
    total = float(np.sum(probs)) if len(probs) else 0.0
    if total > 1 + MASS_TOL:
        errors.append(f"total mass exceeds 1: {total!r}")
    return errors


def _checked(system):
    errors = validate(system)
    if errors:
        raise InvalidSystemError(errors)
    return system


def exact_union_probability(system):
    """Probability that at least one event occurs."""
    _checked(system)
    if system.n_outcomes == 0:
        return 0.0
    covered = system.membership.any(axis=1)
    return float(system.outcome_probs[covered].sum())


def pairwise_matrix(system):
    """Symmetric matrix of ``P(A_i & A_j)``; the diagonal holds ``P(A_i)``."""
    _checked(system)
    w = system.membership.astype(float)
    return (w.T * system.outcome_probs) @ w


def moment_summary(system):
    _checked(system)
    b = pairwise_matrix(system)
    alpha = np.diag(b).copy()
    gamma = b.sum(axis=1)
    return MomentSummary(alpha, gamma - alpha, gamma)


def degree_decomposition(system):
    _checked(system)
    n = system.n_events
    a = np.zeros((n, n))
    deg = system.degrees
    for m, p in enumerate(system.outcome_probs):
        k = deg[m]
        if k == 0:
            continue
        a[system.membership[m], k - 1] += p
    return DegreeDecomposition(a)
