"""Serialization of LRE and FTRE tables (CSV and aligned text)."""

from __future__ import annotations

import csv
import io
from typing import Iterable, Sequence

from .circuit import CircuitSummary
from .estimate import FtreReport

FTRE_COLUMNS = [
    "Application",
    "Algorithm",
    "d1",
    "d2",
    "N",
    "P_T",
    "n_total",
    "tau_total",
    "tau_total*d2",
    "n_total*tau_total*d2^3",
    "eps_logical",
    "eps_dist",
    "eps_storage",
    "eps_total",
]

LRE_COLUMNS = [
    "Name",
    "Occurrences",
    "LQ",
    "Gates",
    "T Gates",
    "Depth",
    "Density",
    "T Fraction",
]

_INT_COLUMNS = {"d1", "d2", "N"}


def sci(x: float) -> str:
    """Scientific notation with three significant figures."""
    return f"{x:.2e}"


def ftre_row(report: FtreReport) -> dict[str, str]:
    return {
        "Application": report.application,
        "Algorithm": report.algorithm,
        "d1": str(report.d1),
        "d2": str(report.d2),
        "N": str(report.num_factories),
        "P_T": sci(report.p_t),
        "n_total": sci(report.n_total),
        "tau_total": sci(report.tau_total),
        "tau_total*d2": sci(report.time_metric),
        "n_total*tau_total*d2^3": sci(report.footprint_metric),
        "eps_logical": sci(report.eps_logical),
        "eps_dist": sci(report.eps_dist),
        "eps_storage": sci(report.eps_storage),
        "eps_total": sci(report.eps_total),
    }


def parse_ftre_row(row: dict[str, str]) -> dict[str, float | int | str]:
    out: dict[str, float | int | str] = {}
    for col in FTRE_COLUMNS:
        val = row[col]
        if col in ("Application", "Algorithm"):
            out[col] = val
        elif col in _INT_COLUMNS:
            out[col] = int(val)
        else:
            out[col] = float(val)
    return out


def lre_row(name: str, summary: CircuitSummary) -> dict[str, str]:
    """LRE table row: counts are totals over all occurrences."""
    return {
        "Name": name,
        "Occurrences": sci(summary.occurrences),
        "LQ": str(summary.num_lq),
        "Gates": sci(summary.total_gates),
        "T Gates": sci(summary.total_t),
        "Depth": sci(summary.total_depth),
        "Density": sci(summary.density),
        "T Fraction": sci(summary.t_fraction),
    }


def to_csv(rows: Iterable[dict[str, str]], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def read_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def to_table(rows: Sequence[dict[str, str]], columns: Sequence[str]) -> str:
    widths = [max([len(c)] + [len(r[c]) for r in rows]) for c in columns]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for r in rows:
        lines.append("  ".join(r[c].ljust(w) for c, w in zip(columns, widths)))
    return "\n".join(lines) + "\n"
