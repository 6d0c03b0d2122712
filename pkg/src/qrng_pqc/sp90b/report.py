"""JSON and CSV renderings of battery reports."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable

from .battery import TESTS, BatteryReport

CSV_COLUMNS = (
    "qrng",
    "mode",
    "mcv",
    "min_entropy",
    "p_value",
    "median_p_independence",
    "median_p_gf",
    "median_p_lrs",
    "min_p_independence",
    "min_p_gf",
    "min_p_lrs",
    "failures_independence",
    "failures_gf",
    "failures_lrs",
    "sanity_pass",
    "iid_pass",
)


def to_json(report: BatteryReport, indent: int | None = 2) -> str:
    return json.dumps(report.to_dict(), indent=indent)


def from_json(text: str) -> BatteryReport:
    return BatteryReport.from_dict(json.loads(text))


def csv_row(report: BatteryReport) -> dict:
    row = {
        "qrng": report.label or "",
        "mode": report.mode or "",
        "mcv": report.global_mcv,
        "min_entropy": f"{report.min_entropy:.5f}",
        "p_value": f"{report.p_sanity:.5g}",
        "sanity_pass": report.sanity.passed,
        "iid_pass": all(getattr(report, t).passed for t in TESTS),
    }
    for t in TESTS:
        summary = getattr(report, t)
        row[f"median_p_{t}"] = f"{summary.median_p:.5f}"
        row[f"min_p_{t}"] = f"{summary.min_p:.5g}"
        row[f"failures_{t}"] = summary.failures
    return row


def to_csv(reports: Iterable[BatteryReport]) -> str:
    """One row per report: the MCV table columns followed by median and minimum p-values."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        writer.writerow(csv_row(report))
    return buf.getvalue()
