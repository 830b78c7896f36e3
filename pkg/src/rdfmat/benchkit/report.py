from __future__ import annotations

import csv
import io
import json

from rdfmat.benchkit.experiment import ExperimentReport

CSV_COLUMNS = ["strategy", "fraction", "attribute_count", "median_s", "mean_s", "stddev_s", "triples", "passes"]

FORMATS = ("json", "csv", "md")


def _csv(report: ExperimentReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for c in report.cells:
        writer.writerow([c.strategy, repr(c.fraction), c.attribute_count, f"{c.median_seconds:.6f}",
                         f"{c.mean_seconds:.6f}", f"{c.stddev_seconds:.6f}", c.triples_emitted, c.passes_performed])
    return buf.getvalue()


def _markdown(report: ExperimentReport) -> str:
    lines = ["| strategy | fraction | attributes | median (s) | mean (s) | stddev (s) | triples | passes |",
             "|---|---|---|---|---|---|---|---|"]
    for c in report.cells:
        lines.append(f"| {c.strategy} | {c.fraction:g} | {c.attribute_count} | {c.median_seconds:.3f} | "
                     f"{c.mean_seconds:.3f} | {c.stddev_seconds:.3f} | {c.triples_emitted} | {c.passes_performed} |")
    reductions = report.reductions()
    if reductions:
        lines += ["", "| fraction | attributes | class/attribute time | reduction |", "|---|---|---|---|"]
        for r in reductions:
            lines.append(f"| {r['fraction']:g} | {r['attribute_count']} | {r['time_ratio']:.3f} | "
                         f"{r['reduction_percent']:.1f}% |")
    env = report.environment
    if env:
        machine = env.get("machine", {})
        lines += ["", f"Measured {env.get('timestamp', '?')} on {machine.get('platform', '?')} "
                      f"({machine.get('cpu_count', '?')} CPUs, Python {machine.get('python', '?')}), "
                      f"single-threaded: {env.get('single_thread')}."]
    return "\n".join(lines) + "\n"


def render_report(report: ExperimentReport, format: str = "json") -> str:
    """Render ``report`` as ``json``, ``csv`` or ``md`` (Markdown)."""
    fmt = format.lower()
    if fmt == "json":
        data = report.to_dict()
        data["reductions"] = report.reductions()
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        return _csv(report)
    if fmt in ("md", "markdown"):
        return _markdown(report)
    raise ValueError(f"unknown report format {format!r}")


def parse_json_report(text: str) -> ExperimentReport:
    data = json.loads(text)
    data.pop("reductions", None)
    return ExperimentReport.from_dict(data)
