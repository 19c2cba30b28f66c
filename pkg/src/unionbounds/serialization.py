"""JSON documents: systems, moment summaries and degree decompositions.

System::

    {"n_events": 3, "outcomes": [{"p": 0.145, "events": [3]}, ...]}

Summary::

    {"alpha": [...], "gamma": [...]}

Decomposition::

    {"n_events": N, "a": [[a_1(1), ..., a_1(N)], ...]}

Event indices are 1-based. Unknown fields are rejected.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .exceptions import FormatError
from .system import DegreeDecomposition, FiniteProbabilitySystem, MomentSummary


def _expect_keys(obj, required, where, optional=()):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    unknown = set(obj) - set(required) - set(optional)
    if unknown:
        raise FormatError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise FormatError(f"{where}: missing field(s) {missing}")


def _number(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise FormatError(f"{where}: expected a number, got {x!r}")
    return float(x)


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"{where}: expected an integer, got {x!r}")
    return x


def system_from_dict(doc):
    _expect_keys(doc, ("n_events", "outcomes"), "system")
    n = _int(doc["n_events"], "n_events")
    if n < 1:
        raise FormatError("n_events must be positive")
    if not isinstance(doc["outcomes"], list):
        raise FormatError("outcomes: expected a list")
    probs = []
    membership = np.zeros((len(doc["outcomes"]), n), dtype=bool)
    for m, item in enumerate(doc["outcomes"]):
        where = f"outcomes[{m}]"
        _expect_keys(item, ("p", "events"), where)
        probs.append(_number(item["p"], f"{where}.p"))
        if not isinstance(item["events"], list):
            raise FormatError(f"{where}.events: expected a list")
        for e in item["events"]:
            e = _int(e, f"{where}.events")
            if not 1 <= e <= n:
                raise FormatError(f"{where}.events: index {e} outside 1..{n}")
            membership[m, e - 1] = True
    return FiniteProbabilitySystem(np.array(probs, dtype=float), membership, n)


def system_to_dict(system):
    return {
        "n_events": int(system.n_events),
        "outcomes": [
            {"p": float(p), "events": [int(i) + 1 for i in np.flatnonzero(row)]}
            for p, row in zip(system.outcome_probs, system.membership)
        ],
    }


def summary_from_dict(doc):
    _expect_keys(doc, ("alpha", "gamma"), "summary")
    vecs = []
    for key in ("alpha", "gamma"):
        if not isinstance(doc[key], list) or not doc[key]:
            raise FormatError(f"{key}: expected a non-empty list")
        vecs.append([_number(x, key) for x in doc[key]])
    if len(vecs[0]) != len(vecs[1]):
        raise FormatError("alpha and gamma differ in length")
    return MomentSummary.from_alpha_gamma(*vecs)


def summary_to_dict(s):
    return {"alpha": [float(x) for x in s.alpha], "gamma": [float(x) for x in s.gamma]}


def decomposition_from_dict(doc):
    _expect_keys(doc, ("n_events", "a"), "decomposition")
    n = _int(doc["n_events"], "n_events")
    rows = doc["a"]
    if n < 1 or not isinstance(rows, list) or len(rows) != n:
        raise FormatError(f"a: expected {n} rows")
    matrix = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise FormatError(f"a[{i}]: expected {n} entries")
        matrix.append([_number(x, f"a[{i}]") for x in row])
    try:
        return DegreeDecomposition(np.array(matrix))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def decomposition_to_dict(d):
    return {"n_events": int(d.n_events), "a": [[float(x) for x in row] for row in d.a]}


def read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def load_input(path):
    """Load a system or a summary, deciding by the document's fields."""
    doc = read_json(path)
    if isinstance(doc, dict) and "outcomes" in doc:
        return system_from_dict(doc)
    if isinstance(doc, dict) and "alpha" in doc:
        return summary_from_dict(doc)
    raise FormatError(f"{path}: neither a system nor a summary document")


def load_system(path):
    return system_from_dict(read_json(path))


def load_decomposition(path):
    return decomposition_from_dict(read_json(path))


def dumps(doc):
    return json.dumps(doc, indent=2) + "\n"
