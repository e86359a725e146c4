"""
Serialization of samples, records and tables.

Every text format is byte-deterministic: fixed float formatting, sorted
JSON keys and LF line endings.
"""

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

import numpy as np
from jinja2 import Environment, PackageLoader, StrictUndefined

from mirrorwell.exceptions import ValidationError
from mirrorwell.logging_config import get_logger
from mirrorwell.potentials import evaluate
from mirrorwell.schemas.potential import PotentialSpec
from mirrorwell.schemas.spectrum import EigenvalueRecord, WellKind
from mirrorwell.tables import RenderedTable
from mirrorwell.wavefun import SampledWavefunction

logger = get_logger(__name__)

KIND_COLORS = {WellKind.DOUBLE: "blue", WellKind.SINGLE: "red"}
DEFAULT_COLOR = "black"
RECORD_FIELDS = ("kind", "sector", "index", "d", "energy", "residual", "method")

_WIDTH, _HEIGHT = 640, 420
_LEFT, _RIGHT, _TOP, _BOTTOM = 60, 620, 20, 370

_environment = Environment(
    loader=PackageLoader("mirrorwell", "templates"),
    undefined=StrictUndefined,
    keep_trailing_newline=True,
    autoescape=True,
)


@dataclass(frozen=True)
class Curve:
    label: str
    xs: np.ndarray
    ys: np.ndarray
    color: str = DEFAULT_COLOR


def to_csv(sampled: SampledWavefunction) -> str:
    """x,psi rows with 17 significant digits."""
    lines = ["x,psi"]
    lines.extend(f"{x:.17g},{psi:.17g}" for x, psi in zip(sampled.xs, sampled.values))
    return "\n".join(lines) + "\n"


def _plain(value):
    return repr(float(value)) if isinstance(value, (float, np.floating)) else value


def records_to_csv(records: Iterable[EigenvalueRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(RECORD_FIELDS)
    for record in records:
        flat = record.flat()
        writer.writerow(["" if flat[key] is None else _plain(flat[key]) for key in RECORD_FIELDS])
    return buffer.getvalue()


def records_to_json(records: Iterable[EigenvalueRecord]) -> str:
    return json.dumps([record.flat() for record in records], sort_keys=True, indent=2) + "\n"


def curve_for(sampled: SampledWavefunction, label: Optional[str] = None) -> Curve:
    """Double-well states are drawn blue, single-well states red."""
    label = label or f"{sampled.kind.value} {sampled.sector.value} E={sampled.energy:.6g}"
    return Curve(label, sampled.xs, sampled.values, KIND_COLORS.get(sampled.kind, DEFAULT_COLOR))


def _scale(values: np.ndarray, low: float, high: float, start: float, stop: float) -> np.ndarray:
    span = high - low if high > low else 1.0
    return start + (values - low) * (stop - start) / span


def render_svg(curves: Sequence[Curve], caption: str) -> str:
    """One polyline per curve on shared axes.

    Raises:
        ValidationError: If there is nothing finite to draw.
    """
    if not curves:
        raise ValidationError("at least one curve is required")
    finite = [c.ys[np.isfinite(c.ys)] for c in curves]
    if not any(f.size for f in finite):
        raise ValidationError("curves hold no finite values")
    x_min = min(float(np.min(c.xs)) for c in curves)
    x_max = max(float(np.max(c.xs)) for c in curves)
    y_min = min(float(np.min(f)) for f in finite if f.size)
    y_max = max(float(np.max(f)) for f in finite if f.size)
    if y_min == y_max:
        y_min, y_max = y_min - 1.0, y_max + 1.0

    rendered = []
    for curve in curves:
        keep = np.isfinite(curve.ys)
        px = _scale(curve.xs[keep], x_min, x_max, _LEFT, _RIGHT)
        py = _scale(curve.ys[keep], y_min, y_max, _BOTTOM, _TOP)
        points = " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(px, py))
        rendered.append({"label": curve.label, "color": curve.color, "points": points})

    x_axis = float(_scale(np.array(0.0), y_min, y_max, _BOTTOM, _TOP)) if y_min <= 0.0 <= y_max else None
    y_axis = float(_scale(np.array(0.0), x_min, x_max, _LEFT, _RIGHT)) if x_min <= 0.0 <= x_max else None

    template = _environment.get_template("plot.svg.j2")
    return template.render(
        width=_WIDTH,
        height=_HEIGHT,
        left=_LEFT,
        right=_RIGHT,
        top=_TOP,
        bottom=_BOTTOM,
        x_axis=None if x_axis is None else f"{x_axis:.2f}",
        y_axis=None if y_axis is None else f"{y_axis:.2f}",
        x_min_label=f"{x_min:.4g}",
        x_max_label=f"{x_max:.4g}",
        y_min_label=f"{y_min:.4g}",
        y_max_label=f"{y_max:.4g}",
        curves=rendered,
        caption=caption,
    )


def render_potential_svg(spec: PotentialSpec, xs: np.ndarray, y_cap: Optional[float] = None) -> str:
    """Profile of a catalog potential; wall regions are left undrawn."""
    values = np.asarray(evaluate(spec, xs), dtype=float)
    if y_cap is not None:
        values = np.where(values > y_cap, np.nan, values)
    caption = f"V_{spec.name}(x), d={spec.d:g}"
    return render_svg([Curve(spec.name, np.asarray(xs, dtype=float), values)], caption)


def render_table_text(table: RenderedTable) -> str:
    """Left-aligned columns separated by two spaces."""
    rows = [table.header, *table.rows]
    widths = [max(len(row[i]) for row in rows) for i in range(len(table.header))]
    lines = [table.title]
    lines.extend("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in rows)
    return "\n".join(lines) + "\n"


def render_table_csv(table: RenderedTable) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.header)
    writer.writerows(table.rows)
    return buffer.getvalue()


def render_table_json(table: RenderedTable) -> str:
    payload = {"title": table.title, "header": list(table.header), "rows": [list(row) for row in table.rows]}
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def render_records_text(records: Sequence[EigenvalueRecord]) -> str:
    lines: List[str] = []
    for record in records:
        flat = record.flat()
        sector = flat["sector"] or "-"
        lines.append(f"{flat['kind']:<5} {sector:<5} {flat['index']:>3}  d={flat['d']:<10g} E={flat['energy']:.10f}  [{flat['method']}]")
    return "\n".join(lines) + "\n"
