"""All bounds for one system or summary, plus table/JSON/CSV rendering."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

from . import analytic, lp_bounds
from .exceptions import InfeasibleSummaryError
from .simplex import FEAS_TOL
from .system import FiniteProbabilitySystem, exact_union_probability, moment_summary, pairwise_matrix

BOUND_NAMES = (
    "ds", "de_caen", "kat", "gk", "yat", "kat_plus_gap",
    "opt_lower", "opt_upper", "alpha_lower", "alpha_upper",
)
CSV_COLUMNS = ("system", "exact", "ds", "de_caen", "kat", "gk", "yat", "kat_plus_gap", "opt_lower", "opt_upper")


@dataclass
class BoundReport:
    system_id: str
    exact_union: float | None
    bounds: dict = field(default_factory=dict)
    gap: dict = field(default_factory=dict)

    def problems(self, tol=1e-9):
        out = [f"{k}={v!r} outside [0, 1]" for k, v in self.bounds.items() if not -tol <= v <= 1 + tol]
        b = self.bounds
        if {"opt_lower", "yat", "kat"} <= b.keys():
            if not b["opt_lower"] >= b["yat"] - tol >= b["kat"] - 2 * tol:
                out.append("ordering opt_lower >= yat >= kat violated")
        return out

    def to_dict(self):
        return {
            "system_id": self.system_id,
            "exact_union": self.exact_union,
            "bounds": dict(self.bounds),
            "gap": dict(self.gap),
        }


def compute_report(source, system_id="input", *, tol=FEAS_TOL):
    """Every bound that applies to ``source`` (a system or a moment summary).

    GK and the exact union need the full system; they are omitted for summaries.
    Raises InfeasibleSummaryError if no event family realizes the summary.
    """
    system = source if isinstance(source, FiniteProbabilitySystem) else None
    s = moment_summary(system) if system is not None else source.check()

    bounds = {}
    bounds["ds"] = analytic.ds_bound(s)
    bounds["de_caen"] = analytic.de_caen_bound(s)
    bounds["kat"] = analytic.kat_bound(s)
    if system is not None:
        bounds["gk"] = analytic.gk_bound(pairwise_matrix(system), s.alpha)
    bounds["yat"] = analytic.yat_bound(s)
    gap_lb = analytic.gap_lower_bound(s)
    bounds["kat_plus_gap"] = bounds["kat"] + gap_lb

    lower = lp_bounds.optimal_lower_lp(s, tol=tol)
    upper = lp_bounds.optimal_upper_lp(s, tol=tol)
    if not (lower.optimal and upper.optimal):
        raise InfeasibleSummaryError(lower.message or upper.message)
    bounds["opt_lower"] = lower.value
    bounds["opt_upper"] = upper.value
    bounds["alpha_lower"], bounds["alpha_upper"] = lp_bounds.alpha_only_bounds(s.alpha, tol=tol)

    exact = exact_union_probability(system) if system is not None else None
    gap = {"yat_minus_kat": bounds["yat"] - bounds["kat"], "lower_bound": gap_lb}
    return BoundReport(system_id, exact, bounds, gap)


def round4(x):
    """Half-up rounding to 4 decimals, as a string."""
    return str(Decimal(repr(float(x))).quantize(Decimal("0.0001"), rounding=ROUND_HALF_UP))


def render_json(reports):
    return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"


def render_csv(reports):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        row = [r.system_id, "" if r.exact_union is None else repr(r.exact_union)]
        row += [repr(r.bounds[c]) if c in r.bounds else "" for c in CSV_COLUMNS[2:]]
        writer.writerow(row)
    return buf.getvalue()


def render_table(reports):
    lines = []
    for r in reports:
        lines.append(f"system {r.system_id}")
        if r.exact_union is not None:
            lines.append(f"  {'exact':<13}{round4(r.exact_union)}")
        for name in BOUND_NAMES:
            if name in r.bounds:
                lines.append(f"  {name:<13}{round4(r.bounds[name])}")
        lines.append(f"  {'yat - kat':<13}{round4(r.gap['yat_minus_kat'])}")
        lines.append(f"  {'gap bound':<13}{round4(r.gap['lower_bound'])}")
    return "\n".join(lines) + "\n"


RENDERERS = {"table": render_table, "json": render_json, "csv": render_csv}
