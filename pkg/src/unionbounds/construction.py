"""Witness systems realizing a degree decomposition (the circle construction).

For each degree ``k`` the events' masses ``a_1(k), ..., a_N(k)`` are laid end
to end on a line of length ``sum_i a_i(k)`` and wrapped ``k`` times around a
circle of perimeter ``sum_i a_i(k) / k``. Because no single ``a_j(k)`` exceeds
the perimeter, every point of the circle is covered by exactly ``k`` distinct
events. The ``N`` wrap points cut the circle into arcs, and each arc becomes an
outcome contained in the ``k`` events covering it.

Positions are kept as fractions of one turn, in ``[0, 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ConstructionError
from .system import (
    DegreeDecomposition,
    FiniteProbabilitySystem,
    degree_decomposition,
    exact_union_probability,
    moment_summary,
)

PRECOND_TOL = 1e-9
TIE_TOL = 1e-12
CHECK_TOL = 1e-9


@dataclass(frozen=True)
class CircleLayout:
    """Arcs of the degree-``k`` circle.

    ``breakpoints[j]`` is where arc ``j`` starts (sorted, first is 0);
    ``arc_memberships[j]`` holds the 0-based indices of the events covering it.
    """

    k: int
    perimeter: float
    breakpoints: tuple
    arc_lengths: tuple
    arc_memberships: tuple


def circle_layout(masses, k):
    """Lay out one degree block ``masses[j] = a_j(k)``; None when the block is empty."""
    masses = np.asarray(masses, dtype=float)
    total = float(masses.sum())
    if total <= 0:
        return None
    perimeter = total / k
    if masses.max() > perimeter + PRECOND_TOL:
        raise ConstructionError(
            f"degree {k}: a_j(k) = {masses.max()!r} exceeds the circle perimeter {perimeter!r}"
        )

    # unrolled end of each event's segment, in turns; the last is exactly k
    ends = k * np.cumsum(masses) / total
    ends[-1] = k
    turns, fracs = [], []
    for e in ends:
        c = math.floor(e + TIE_TOL)
        turns.append(c)
        fracs.append(max(e - c, 0.0))

    order = sorted(range(len(fracs)), key=lambda j: (fracs[j], j))
    # merge near-coincident breakpoints onto the first of each cluster
    snapped = list(fracs)
    prev = None
    for j in order:
        if prev is not None and fracs[j] - snapped[prev] <= TIE_TOL:
            snapped[j] = snapped[prev]
        prev = j
    keys = [(turns[j], snapped[j]) for j in range(len(fracs))]
    breaks = [float(snapped[j]) for j in order]

    lengths, members = [], []
    for p, theta in enumerate(breaks):
        nxt = breaks[p + 1] if p + 1 < len(breaks) else 1.0
        lengths.append(float((nxt - theta) * perimeter))
        # half-open arcs: the event covering (c, theta) on turn c is the first whose end lies beyond it
        cover = set()
        for c in range(k):
            cover.add(next(j for j, key in enumerate(keys) if key > (c, theta)))
        members.append(frozenset(cover))
    return CircleLayout(k, perimeter, tuple(breaks), tuple(lengths), tuple(members))


def check_constructible(a, tol=PRECOND_TOL):
    """Raise ConstructionError unless ``a`` meets the coupling and total-mass preconditions."""
    a = a.a if isinstance(a, DegreeDecomposition) else np.asarray(a, dtype=float)
    n = a.shape[0]
    col_sums = a.sum(axis=0)
    for k in range(1, n + 1):
        worst = float(np.max(k * a[:, k - 1] - col_sums[k - 1]))
        if worst > tol:
            j = int(np.argmax(k * a[:, k - 1] - col_sums[k - 1]))
            raise ConstructionError(
                f"sum_i a_i({k}) = {col_sums[k - 1]!r} < {k} * a_{j + 1}({k}) = {k * a[j, k - 1]!r}"
            )
    union = float(np.sum(a / np.arange(1, n + 1)))
    if union > 1 + tol:
        raise ConstructionError(f"total union mass {union!r} exceeds 1")


def construct_system(a, *, prune_zero=False):
    """Build a finite system whose degree decomposition is ``a``.

    Outcomes are emitted circle by circle (``k = 1..N``), one per arc; the
    remaining mass is the implicit outcome outside every event.
    """
    if not isinstance(a, DegreeDecomposition):
        a = DegreeDecomposition(a)
    check_constructible(a)
    n = a.n_events
    probs, rows = [], []
    for k in range(1, n + 1):
        layout = circle_layout(a.a[:, k - 1], k)
        if layout is None:
            continue
        for length, cover in zip(layout.arc_lengths, layout.arc_memberships):
            if prune_zero and length <= 0:
                continue
            row = np.zeros(n, dtype=bool)
            row[list(cover)] = True
            probs.append(length)
            rows.append(row)
    membership = np.array(rows, dtype=bool).reshape(len(rows), n)
    return FiniteProbabilitySystem(np.array(probs, dtype=float), membership, n)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    detail: str = ""


@dataclass(frozen=True)
class RealizationReport:
    checks: tuple

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def lines(self):
        return [
            f"{'PASS' if c.passed else 'FAIL'} {c.name}: residual {c.residual:.3e}"
            + (f" ({c.detail})" if c.detail else "")
            for c in self.checks
        ]


def verify_realization(a, system, tol=CHECK_TOL):
    """Check that ``system`` realizes decomposition ``a``: degrees, moments and union probability."""
    if not isinstance(a, DegreeDecomposition):
        a = DegreeDecomposition(a)
    if system.n_events != a.n_events:
        msg = f"system has {system.n_events} events, decomposition has {a.n_events}"
        return RealizationReport(tuple(CheckResult(name, False, math.inf, msg)
                                       for name in ("decomposition", "moments", "union")))
    try:
        got = degree_decomposition(system)
    except ValueError as exc:
        return RealizationReport((CheckResult("decomposition", False, math.inf, str(exc)),))

    deg_res = float(np.max(np.abs(got.a - a.a)))
    moments = moment_summary(system)
    mom_res = max(
        float(np.max(np.abs(moments.alpha - a.row_alpha()))),
        float(np.max(np.abs(moments.gamma - a.row_gamma()))),
    )
    union_res = abs(exact_union_probability(system) - a.union_probability())
    return RealizationReport((
        CheckResult("decomposition", deg_res <= tol, deg_res),
        CheckResult("moments", mom_res <= tol, mom_res),
        CheckResult("union", union_res <= tol, union_res),
    ))
