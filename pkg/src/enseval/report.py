"""Report assembly and serialization: per-ensemble metric tables, ranked
sweep results, baseline comparison, and the SVG bar chart.

Rounding policy: raw float64 values flow through every computation; display
values are rounded half-up to 4 decimals here and nowhere else. The json,
csv, and text emissions of one document therefore carry identical rounded
values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from xml.sax.saxutils import escape

from .core import (
    ClassCatalog,
    ConfusionMatrix,
    EnsembleSpec,
    F1Mode,
    METRIC_NAMES,
    MetricsReport,
)
from .errors import MalformedBaselines

EPOCH_TIMESTAMP = "1970-01-01T00:00:00Z"


def default_timestamp() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def round_half_up(value: float, places: int = 4) -> Decimal:
    """Round the exact stored value of a float half-up to fixed places."""
    quantum = Decimal(1).scaleb(-places)
    return Decimal(value).quantize(quantum, rounding=ROUND_HALF_UP)


def display(value: float) -> str:
    """Fixed 4-decimal display form, e.g. '0.9891'."""
    return str(round_half_up(value))


def _number(value: float) -> float:
    """Rounded value as a float for JSON payloads."""
    return float(round_half_up(value))


def ensemble_entry(name: str, members: list[str], cm: ConfusionMatrix,
                   report: MetricsReport) -> dict:
    """One ensemble's document node: metrics, per-class stats, confusion."""
    return {
        "name": name,
        "members": list(members),
        "f1_mode": report.f1_mode.value,
        "confusion": [[int(v) for v in row] for row in cm.counts],
        "per_class": [
            {
                "name": s.name,
                "support": s.support,
                "tp": s.tp,
                "fp": s.fp,
                "fn": s.fn,
                "precision": _number(s.precision),
                "recall": _number(s.recall),
                "f1": _number(s.f1),
                "precision_undefined": s.precision_undefined,
                "recall_undefined": s.recall_undefined,
            }
            for s in report.per_class
        ],
        "metrics": {name: _number(getattr(report, name))
                    for name in METRIC_NAMES},
    }


def assemble_report(entries: list[dict], catalog: ClassCatalog,
                    generated_at: str) -> dict:
    return {
        "catalog": list(catalog.names),
        "generated_at": generated_at,
        "ensembles": entries,
    }


@dataclass(frozen=True)
class SweepResult:
    """Ranked evaluation of every ensemble in a sweep.

    Rows are sorted descending by the ranking metric's raw value, ties
    broken by display name.
    """

    rows: tuple[tuple[EnsembleSpec, MetricsReport], ...]
    ranking_metric: str
    generated_at: str

    def __post_init__(self):
        if self.ranking_metric not in METRIC_NAMES:
            raise ValueError(f"unknown metric {self.ranking_metric!r}")
        ordered = sorted(
            self.rows,
            key=lambda row: (-getattr(row[1], self.ranking_metric),
                             row[0].display_name))
        object.__setattr__(self, "rows", tuple(ordered))

    @property
    def best_value(self) -> float:
        return getattr(self.rows[0][1], self.ranking_metric)

    @property
    def best_names(self) -> tuple[str, ...]:
        """Display names of every row tied at the top raw value."""
        top = self.best_value
        return tuple(spec.display_name for spec, rep in self.rows
                     if getattr(rep, self.ranking_metric) == top)


def assemble_sweep(sweep: SweepResult,
                   confusions: dict[str, ConfusionMatrix],
                   catalog: ClassCatalog) -> dict:
    entries = [
        ensemble_entry(spec.display_name, list(spec.sorted_members),
                       confusions[spec.display_name], report)
        for spec, report in sweep.rows
    ]
    doc = assemble_report(entries, catalog, sweep.generated_at)
    doc["ranking_metric"] = sweep.ranking_metric
    doc["best"] = {
        "metric": sweep.ranking_metric,
        "value": _number(sweep.best_value),
        "names": list(sweep.best_names),
    }
    return doc


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def to_csv(doc: dict) -> str:
    lines = ["ensemble," + ",".join(METRIC_NAMES)]
    for entry in doc["ensembles"]:
        cells = [display(entry["metrics"][name]) for name in METRIC_NAMES]
        lines.append(entry["name"] + "," + ",".join(cells))
    return "\n".join(lines) + "\n"


def to_text(doc: dict) -> str:
    name_width = max([len("ensemble")]
                     + [len(e["name"]) for e in doc["ensembles"]])
    col_width = max(len(n) for n in METRIC_NAMES)
    lines = [f"generated_at: {doc['generated_at']}"]
    if "ranking_metric" in doc:
        lines.append(f"ranking_metric: {doc['ranking_metric']}")
    header = "ensemble".ljust(name_width) + "  " + "  ".join(
        n.rjust(col_width) for n in METRIC_NAMES)
    lines.append(header)
    lines.append("-" * len(header))
    for entry in doc["ensembles"]:
        cells = "  ".join(display(entry["metrics"][n]).rjust(col_width)
                          for n in METRIC_NAMES)
        lines.append(entry["name"].ljust(name_width) + "  " + cells)
    if "best" in doc:
        best = doc["best"]
        lines.append("")
        lines.append(f"best {best['metric']}: {display(best['value'])} "
                     f"({', '.join(best['names'])})")
    for entry in doc["ensembles"]:
        lines.append("")
        lines.append(f"[{entry['name']}] confusion (rows = actual):")
        width = max(len(str(v)) for row in entry["confusion"] for v in row)
        for cname, row in zip(doc["catalog"], entry["confusion"]):
            cells = " ".join(str(v).rjust(width) for v in row)
            lines.append(f"  {cname:<20} {cells}")
        lines.append(f"[{entry['name']}] per class:")
        for s in entry["per_class"]:
            flags = []
            if s["precision_undefined"]:
                flags.append("precision undefined")
            if s["recall_undefined"]:
                flags.append("recall undefined")
            note = f"  ({'; '.join(flags)})" if flags else ""
            lines.append(
                f"  {s['name']:<20} support={s['support']:<5} "
                f"precision={display(s['precision'])} "
                f"recall={display(s['recall'])} f1={display(s['f1'])}{note}")
    return "\n".join(lines) + "\n"


FORMATTERS = {"json": to_json, "csv": to_csv, "text": to_text}


@dataclass(frozen=True)
class BaselineEntry:
    """One published reference accuracy for the comparison table."""

    author_label: str
    model_label: str
    accuracy: float

    def __post_init__(self):
        if not (0.0 <= self.accuracy <= 1.0):
            raise MalformedBaselines(f"accuracy {self.accuracy!r} outside "
                                     f"[0, 1]")


def load_baselines(path) -> tuple[BaselineEntry, ...]:
    """Parse an ``author,model,accuracy`` file with that exact header."""
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise MalformedBaselines(f"cannot read baselines: {exc}",
                                 path=str(path)) from exc
    if not lines or lines[0] != "author,model,accuracy":
        got = lines[0] if lines else ""
        raise MalformedBaselines(f"bad header {got!r}", path=str(path),
                                 line=1)
    entries = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != 3:
            raise MalformedBaselines(f"expected 3 columns, got {len(cells)}",
                                     path=str(path), line=lineno)
        author, model, acc_text = cells
        try:
            accuracy = float(acc_text)
        except ValueError:
            raise MalformedBaselines(f"non-numeric accuracy {acc_text!r}",
                                     path=str(path), line=lineno) from None
        try:
            entries.append(BaselineEntry(author, model, accuracy))
        except MalformedBaselines as exc:
            exc.path, exc.line = str(path), lineno
            raise
    if not entries:
        raise MalformedBaselines("no baseline rows", path=str(path))
    return tuple(entries)


def assemble_comparison(baselines: tuple[BaselineEntry, ...],
                        sweep: SweepResult | None,
                        generated_at: str) -> dict:
    """Merge static baselines with the sweep's best row, ranked by accuracy."""
    rows = [{"author": b.author_label, "model": b.model_label,
             "accuracy": _number(b.accuracy)} for b in baselines]
    if sweep is not None:
        rows.append({
            "author": "this work",
            "model": "ensemble averaging: " + ", ".join(sweep.best_names),
            "accuracy": _number(sweep.best_value),
        })
    rows.sort(key=lambda r: (-r["accuracy"], r["author"]))
    return {"generated_at": generated_at, "rows": rows}


def comparison_to_text(doc: dict) -> str:
    a_w = max(len("author"), max(len(r["author"]) for r in doc["rows"]))
    m_w = max(len("model"), max(len(r["model"]) for r in doc["rows"]))
    lines = [f"generated_at: {doc['generated_at']}",
             "author".ljust(a_w) + "  " + "model".ljust(m_w) + "  accuracy"]
    lines.append("-" * len(lines[-1]))
    for r in doc["rows"]:
        lines.append(r["author"].ljust(a_w) + "  " + r["model"].ljust(m_w)
                     + "  " + display(r["accuracy"]))
    return "\n".join(lines) + "\n"


def comparison_to_csv(doc: dict) -> str:
    lines = ["author,model,accuracy"]
    for r in doc["rows"]:
        lines.append(f"{r['author']},{r['model']},{display(r['accuracy'])}")
    return "\n".join(lines) + "\n"


COMPARISON_FORMATTERS = {
    "json": to_json,
    "csv": comparison_to_csv,
    "text": comparison_to_text,
}


def render_bar_chart(rows: list[tuple[str, float]], *,
                     title: str = "accuracy comparison") -> str:
    """Minimal deterministic SVG bar chart of (label, accuracy) rows."""
    bar_h, gap, left, top = 24, 10, 260, 50
    scale = 420.0
    width = left + int(scale) + 120
    height = top + len(rows) * (bar_h + gap) + 20
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<text x="{left}" y="24" font-family="monospace" '
        f'font-size="16">{escape(title)}</text>',
    ]
    for i, (label, acc) in enumerate(rows):
        y = top + i * (bar_h + gap)
        w = int(round(max(0.0, min(1.0, acc)) * scale))
        parts.append(f'<text x="{left - 10}" y="{y + 17}" text-anchor="end" '
                     f'font-family="monospace" font-size="13">'
                     f'{escape(label)}</text>')
        parts.append(f'<rect x="{left}" y="{y}" width="{w}" '
                     f'height="{bar_h}" fill="#4878a8"/>')
        parts.append(f'<text x="{left + w + 8}" y="{y + 17}" '
                     f'font-family="monospace" font-size="13">'
                     f'{display(acc)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
