"""Render score reports as a fixed-width table, JSON or CSV.

Tables show two decimals; JSON and CSV keep full precision so nothing
downstream has to re-derive values from rounded numbers.
"""

from __future__ import annotations

import csv
import io
import json

from .metrics import DerComponents, JerComponents, SpeakerJer, SpeakerMapping
from .scoring import AggregateScore, FileScore, ScoreReport
from .timeline import TICKS_PER_SECOND, to_seconds

COLUMNS = ("file_id", "der", "jer", "fa", "miss", "error", "total", "n_ref", "n_sys")
TABLE_HEADER = ("File", "DER", "JER", "FA", "MISS", "ERROR", "TOTAL", "NREF", "NSYS")
NO_FILES = "(no files scored)"


def _row_values(label: str, der: DerComponents, jer: float, n_ref: int, n_sys: int) -> dict:
    return {
        "file_id": label,
        "der": der.der,
        "jer": jer,
        "fa": to_seconds(der.fa),
        "miss": to_seconds(der.miss),
        "error": to_seconds(der.error),
        "total": to_seconds(der.total),
        "n_ref": n_ref,
        "n_sys": n_sys,
    }


def report_rows(report: ScoreReport) -> list[dict]:
    """Flat rows: files in id order, then CORE-OVERALL (if any), then OVERALL."""
    rows = [
        _row_values(f.file_id, f.der, f.jer.jer, f.n_ref, f.n_sys)
        for f in sorted(report.files, key=lambda f: f.file_id)
    ]
    for agg in (report.core, report.overall):
        if agg is not None:
            rows.append(_row_values(agg.label, agg.der, agg.jer, agg.n_ref, agg.n_sys))
    return rows


def render_table(report: ScoreReport) -> str:
    rows = [
        [
            r["file_id"],
            f"{r['der']:.2f}",
            f"{r['jer']:.2f}",
            f"{r['fa']:.2f}",
            f"{r['miss']:.2f}",
            f"{r['error']:.2f}",
            f"{r['total']:.2f}",
            str(r["n_ref"]),
            str(r["n_sys"]),
        ]
        for r in report_rows(report)
    ]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(TABLE_HEADER)]

    def fmt(cells) -> str:
        first = cells[0].ljust(widths[0])
        rest = (c.rjust(w) for c, w in zip(cells[1:], widths[1:]))
        return "  ".join([first, *rest])

    lines = [fmt(TABLE_HEADER), "  ".join("-" * w for w in widths)]
    if rows:
        lines.extend(fmt(r) for r in rows)
    else:
        lines.append(NO_FILES)
    return "\n".join(lines) + "\n"


def _der_json(der: DerComponents) -> dict:
    return {"der": der.der, **der.seconds()}


def _ticks(seconds: float) -> int:
    return round(seconds * TICKS_PER_SECOND)


def _der_from(d: dict) -> DerComponents:
    return DerComponents(_ticks(d["fa"]), _ticks(d["miss"]), _ticks(d["error"]), _ticks(d["total"]))


def _file_json(f: FileScore) -> dict:
    return {
        "file_id": f.file_id,
        **_der_json(f.der),
        "jer": f.jer.jer,
        "n_ref": f.n_ref,
        "n_sys": f.n_sys,
        "mapping": [list(p) for p in f.mapping.pairs],
        "mapping_objective": to_seconds(f.mapping.objective),
        "speakers": [
            {
                "speaker": s.speaker,
                "paired_with": s.paired_with,
                "jer": s.jer,
                "fa": to_seconds(s.fa),
                "miss": to_seconds(s.miss),
                "total": to_seconds(s.total),
            }
            for s in f.jer.speakers
        ],
        "notes": list(f.notes),
    }


def _agg_json(a: AggregateScore | None) -> dict | None:
    if a is None:
        return None
    return {
        "label": a.label,
        **_der_json(a.der),
        "jer": a.jer,
        "n_files": a.n_files,
        "n_ref": a.n_ref,
        "n_sys": a.n_sys,
    }


def to_json(report: ScoreReport) -> str:
    doc = {
        "metadata": report.metadata,
        "files": [_file_json(f) for f in report.files],
        "core": _agg_json(report.core),
        "overall": _agg_json(report.overall),
    }
    return json.dumps(doc, indent=2) + "\n"


def _agg_from(d: dict | None) -> AggregateScore | None:
    if d is None:
        return None
    return AggregateScore(d["label"], _der_from(d), d["jer"], d["n_files"], d["n_ref"], d["n_sys"])


def from_json(text: str) -> ScoreReport:
    """Inverse of :func:`to_json`."""
    doc = json.loads(text)
    files = []
    for f in doc["files"]:
        speakers = tuple(
            SpeakerJer(s["speaker"], _ticks(s["fa"]), _ticks(s["miss"]), _ticks(s["total"]), s["paired_with"])
            for s in f["speakers"]
        )
        files.append(
            FileScore(
                file_id=f["file_id"],
                der=_der_from(f),
                jer=JerComponents(speakers),
                mapping=SpeakerMapping(tuple(tuple(p) for p in f["mapping"]), _ticks(f["mapping_objective"])),
                n_ref=f["n_ref"],
                n_sys=f["n_sys"],
                notes=tuple(f["notes"]),
            )
        )
    return ScoreReport(tuple(files), _agg_from(doc["overall"]), _agg_from(doc["core"]), doc["metadata"])


def to_csv(report: ScoreReport) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in report_rows(report):
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
    return buf.getvalue()


def emit_machine(report: ScoreReport, format: str) -> str:
    if format == "json":
        return to_json(report)
    if format == "csv":
        return to_csv(report)
    raise ValueError(f"unknown machine format {format!r}; expected 'json' or 'csv'")
