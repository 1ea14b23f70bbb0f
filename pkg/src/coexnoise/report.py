"""Tidy CSV and JSON renderings of budgets and sweeps."""
from __future__ import annotations

import csv
import io
import json
from typing import Sequence

from .scenario import NoiseBudget, SweepPoint

CSV_HEADER = ("axis", "mechanism", "psd_w_per_hz", "power_w", "photons_per_s")


def _entry_dict(e) -> dict:
    return {"psd_w_per_hz": e.psd_w_per_hz, "power_w": e.power_w, "photons_per_s": e.photons_per_s}


def budget_to_dict(budget: NoiseBudget) -> dict:
    return {
        "quantum": {
            "frequency_thz": budget.quantum.frequency.thz,
            "bandwidth_ghz": budget.quantum.bandwidth_ghz,
        },
        "entries": {k: _entry_dict(e) for k, e in budget.entries.items()},
        "total": _entry_dict(budget.total),
        "alternates": {k: _entry_dict(e) for k, e in budget.alternates.items()},
        "metadata": budget.metadata,
    }


def budget_rows(budget: NoiseBudget, axis_value="") -> list[tuple]:
    """One row per active mechanism, then any alternates (which are not part of the total)."""
    rows = []
    for name, e in list(budget.entries.items()) + list(budget.alternates.items()):
        rows.append((axis_value, name, e.psd_w_per_hz, e.power_w, e.photons_per_s))
    return rows


def _fmt(v) -> str:
    return repr(float(v)) if isinstance(v, float) else str(v)


def to_csv(rows: Sequence[tuple]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def budget_csv(budget: NoiseBudget) -> str:
    return to_csv(budget_rows(budget))


def sweep_csv(points: Sequence[SweepPoint]) -> str:
    rows = []
    for pt in points:
        rows += budget_rows(pt.budget, pt.value)
    return to_csv(rows)


def budget_json(budget: NoiseBudget) -> str:
    return json.dumps(budget_to_dict(budget), indent=2) + "\n"


def sweep_json(axis: str, unit: str, points: Sequence[SweepPoint]) -> str:
    doc = {
        "axis": axis,
        "unit": unit,
        "points": [{"value": pt.value, "budget": budget_to_dict(pt.budget)} for pt in points],
    }
    return json.dumps(doc, indent=2) + "\n"
