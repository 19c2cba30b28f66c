"""Reproduce the lower-bound comparison and gap tables for the bundled Systems V-VIII."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from . import analytic, lp_bounds
from .report import round4
from .serialization import load_system
from .system import exact_union_probability, moment_summary, pairwise_matrix

TABLE_TOL = 5e-4
FOOTER = "Systems I-IV are not reproduced: their underlying event systems are not available."


def bundled_dir():
    return Path(str(resources.files("unionbounds") / "data"))


def load_expected(directory=None):
    path = Path(directory or bundled_dir()) / "expected_tables.json"
    if not path.exists():
        path = bundled_dir() / "expected_tables.json"
    return json.loads(path.read_text())


def compute_rows(directory=None):
    """Full-precision values per system: ``{name: {column: value}}``.

    Raises FileNotFoundError if a system fixture is missing.
    """
    directory = Path(directory or bundled_dir())
    expected = load_expected(directory)
    rows = {}
    for name, meta in expected["systems"].items():
        path = directory / meta["file"]
        if not path.exists():
            raise FileNotFoundError(f"missing fixture {path}")
        system = load_system(path)
        s = moment_summary(system)
        kat = analytic.kat_bound(s)
        yat = analytic.yat_bound(s)
        rows[name] = {
            "exact": exact_union_probability(system),
            "ds": analytic.ds_bound(s),
            "de_caen": analytic.de_caen_bound(s),
            "kat": kat,
            "gk": analytic.gk_bound(pairwise_matrix(system), s.alpha),
            "yat": yat,
            "opt_lower": lp_bounds.optimal_lower_lp(s).value,
            "yat_minus_kat": yat - kat,
            "gap_lower_bound": analytic.gap_lower_bound(s),
        }
    return rows


def render(rows, expected):
    out = []
    for key, title in (("lower_bounds", "Comparison of lower bounds"), ("gap", "New analytical bound vs KAT")):
        cols = expected[key]["columns"]
        out.append(title)
        out.append("  ".join([f"{'system':<7}"] + [f"{c:>15}" for c in cols]))
        for name, values in rows.items():
            out.append("  ".join([f"{name:<7}"] + [f"{round4(values[c]):>15}" for c in cols]))
        out.append("")
    out.append(FOOTER)
    return "\n".join(out) + "\n"


def mismatches(rows, expected, tol=TABLE_TOL):
    """``[(system, column, got, want)]`` for every cell off by more than ``tol``."""
    bad = []
    for key in ("lower_bounds", "gap"):
        cols = expected[key]["columns"]
        for name, want_row in expected[key]["rows"].items():
            for col, want in zip(cols, want_row):
                got = rows[name][col]
                if not abs(got - want) <= tol:
                    bad.append((name, col, got, want))
    return bad
