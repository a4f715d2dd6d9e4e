"""JSON/CSV rendering of classification reports and verification summaries.

Big integers are written as decimal strings.
"""

from __future__ import annotations

import csv
import io
import math
from typing import Iterable

from .analysis import CHARACTERIZED, ClassificationReport
from .enumeration import EnumerationSummary
from .formats import emit_graph6
from .graph import Graph, from_mask


def _num(x: int | None) -> str | None:
    return None if x is None else str(x)


def _diameter(d: float) -> int | str:
    return "inf" if d == math.inf else int(d)


def report_to_dict(report: ClassificationReport, g: Graph, source: str | None = None) -> dict:
    p = report.profile
    return {
        "source": source,
        "graph6": emit_graph6(g).decode(),
        "n": p.n,
        "factors": [str(x) for x in p.factors],
        "deltas": None if p.deltas is None else [str(x) for x in p.deltas],
        "tree_count": str(p.tree_count),
        "diameter": _diameter(p.diameter),
        "s2": _num(p.s2),
        "s3": _num(p.s3),
        "s3_class": report.s3_class.value,
        "matched_family": report.matched_family,
        "structural_check_passed": report.structural_check_passed,
    }


REPORT_CSV_FIELDS = ("source", "graph6", "n", "factors", "tree_count", "diameter", "s2", "s3",
                     "s3_class", "matched_family", "structural_check_passed")


def reports_to_csv(rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=REPORT_CSV_FIELDS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({**row, "factors": " ".join(row["factors"]), "matched_family": row["matched_family"] or ""})
    return buf.getvalue()


def _graph_ref(n: int, mask: int) -> dict:
    return {"canonical": str(mask), "graph6": emit_graph6(from_mask(n, mask)).decode()}


def summary_to_dict(summary: EnumerationSummary) -> dict:
    n = summary.n
    return {
        "n": n,
        "total_connected": summary.total_connected,
        "s3_histogram": {str(k): v for k, v in summary.s3_histogram.items()},
        "witness_counts": {cls.value: c for cls, c in summary.witness_counts().items()} if summary.witnesses else {},
        "witnesses": {cls.value: [_graph_ref(n, m) for m in summary.witnesses.get(cls, [])]
                      for cls in CHARACTERIZED if cls in summary.witnesses},
        "violations": [{**_graph_ref(n, v.canonical), "claim": v.claim.value, "details": v.details}
                       for v in summary.violations],
    }


def histogram_to_csv(summaries: Iterable[EnumerationSummary]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "s3", "count"])
    for s in summaries:
        for value, count in s.s3_histogram.items():
            w.writerow([s.n, value, count])
    return buf.getvalue()


def summary_text(summary: EnumerationSummary) -> str:
    lines = [f"n = {summary.n}: {summary.total_connected} connected classes"]
    if summary.s3_histogram:
        hist = ", ".join(f"{k}: {v}" for k, v in summary.s3_histogram.items())
        lines.append(f"  s3 histogram (K_n excluded): {hist}")
    if summary.witnesses:
        counts = ", ".join(f"{cls.value} {c}" for cls, c in summary.witness_counts().items())
        lines.append(f"  witnesses: {counts}")
    lines.append(f"  violations: {len(summary.violations)}")
    for v in summary.violations:
        lines.append(f"    {v.claim.value} {emit_graph6(from_mask(summary.n, v.canonical)).decode()}: {v.details}")
    return "\n".join(lines)
