"""CSV tables and a small self-contained SVG plotter for cost curves."""

from __future__ import annotations

import csv
import io
import math
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence
from xml.sax.saxutils import escape

from .analytic import TruthTableRow
from .core import format_rational
from .montecarlo import CostRecord
from .planner import ExponentFit

TRUTH_TABLE_COLUMNS = ["input", "throughput", "fg1", "fg2", "result", "prob_exact", "prob_float"]
COST_COLUMNS = ["scheme", "target", "mode", "size", "cost_exact", "cost_mean", "cost_std", "runs", "seed", "note"]
FIT_MARKER = "k_fit"


def render_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"row has {len(row)} columns, header has {len(header)}")
        writer.writerow(row)
    return buf.getvalue()


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write via a temp file in the same directory, then rename over ``path``."""
    path = os.fspath(path)
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _pattern(pols) -> str:
    return ",".join(p.name for p in pols)


def truth_table_rows(rows: Sequence[TruthTableRow]) -> list[list[str]]:
    out = []
    for row in rows:
        throughput = "{" + _pattern(row.fg1_pair) + "},{" + _pattern(row.fg2_pair) + "}"
        out.append(
            [
                _pattern(row.input),
                throughput,
                row.gates[0].value,
                row.gates[1].value,
                row.result.value,
                format_rational(row.probability),
                repr(float(row.probability)),
            ]
        )
    return out


def norecycle_row(scheme: str, size: int, cost: Fraction) -> list[str]:
    return [scheme, str(size), "norecycle", str(size), format_rational(cost), repr(float(cost)), "0.0", "0", "", ""]


def recycle_row(record: CostRecord) -> list[str]:
    return [
        str(record.scheme),
        str(record.target_size_or_set),
        "recycle",
        repr(record.mean_size),
        "",
        repr(record.mean_cost),
        repr(record.std_dev),
        str(record.runs),
        str(record.seed),
        "",
    ]


def error_row(scheme: str, target: object, mode: str, message: str) -> list[str]:
    return [scheme, str(target), mode, "", "", "", "", "", "", f"error: {message}"]


def fit_row(scheme: str, mode: str, fit: ExponentFit) -> list[str]:
    return [scheme, FIT_MARKER, mode, "", "", repr(fit.k), repr(fit.residual), "", "", f"c={fit.c!r}"]


@dataclass(frozen=True)
class CostPoint:
    scheme: str
    mode: str
    target: str
    size: float
    cost: float
    cost_exact: str


def parse_cost_csv(text: str, source: str = "<csv>") -> list[CostPoint]:
    """Read a table written by the ``cost`` command; fit and error rows are skipped."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None:
        raise ValueError(f"{source}: empty file")
    missing = [c for c in ("scheme", "target", "mode", "size", "cost_mean") if c not in header]
    if missing:
        raise ValueError(f"{source}: header lacks columns {missing}")
    col = {name: i for i, name in enumerate(header)}
    points = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise ValueError(f"{source}: row {lineno} has {len(row)} columns, expected {len(header)}")
        if row[col["target"]] == FIT_MARKER:
            continue
        if "note" in col and row[col["note"]].startswith("error"):
            continue
        try:
            size = float(row[col["size"]])
            cost = float(row[col["cost_mean"]])
        except ValueError:
            raise ValueError(f"{source}: row {lineno} has non-numeric size/cost") from None
        if not (math.isfinite(size) and math.isfinite(cost)) or cost <= 0:
            raise ValueError(f"{source}: row {lineno} has a non-positive or non-finite cost")
        exact = row[col["cost_exact"]] if "cost_exact" in col else ""
        points.append(CostPoint(row[col["scheme"]], row[col["mode"]], row[col["target"]], size, cost, exact))
    if not points:
        raise ValueError(f"{source}: no data rows")
    return points


_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"]


def render_svg(
    points: Sequence[CostPoint],
    title: str = "Resource cost",
    width: int = 720,
    height: int = 480,
) -> str:
    """Log-scale-y line chart, one series per (scheme, mode)."""
    if not points:
        raise ValueError("nothing to plot")
    series: dict[tuple[str, str], list[CostPoint]] = {}
    for p in points:
        series.setdefault((p.scheme, p.mode), []).append(p)

    left, right, top, bottom = 80, 190, 40, 60
    pw, ph = width - left - right, height - top - bottom
    xs = [p.size for p in points]
    ys = [math.log10(p.cost) for p in points]
    x0, x1 = min(xs), max(xs)
    y0, y1 = math.floor(min(ys)), math.ceil(max(ys))
    if x1 == x0:
        x0, x1 = x0 - 1, x1 + 1
    if y1 == y0:
        y1 = y0 + 1

    def sx(x: float) -> float:
        return left + (x - x0) / (x1 - x0) * pw

    def sy(logy: float) -> float:
        return top + ph - (logy - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{left + pw / 2:.1f}" y="{top - 15}" text-anchor="middle" font-size="15">{escape(title)}</text>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    step = max(1, (y1 - y0 + 7) // 8)
    for d in range(y0, y1 + 1, step):
        y = sy(d)
        out.append(f'<line x1="{left}" y1="{y:.1f}" x2="{left + pw}" y2="{y:.1f}" stroke="#ddd"/>')
        out.append(f'<text x="{left - 6}" y="{y + 4:.1f}" text-anchor="end">1e{d}</text>')
    for i in range(6):
        xv = x0 + (x1 - x0) * i / 5
        x = sx(xv)
        out.append(f'<line x1="{x:.1f}" y1="{top + ph}" x2="{x:.1f}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.1f}" y="{top + ph + 18}" text-anchor="middle">{xv:.4g}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 15}" text-anchor="middle">W state size N</text>')
    out.append(
        f'<text x="20" y="{top + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 20 {top + ph / 2:.1f})">cost (number of W3)</text>'
    )

    for i, ((scheme, mode), pts) in enumerate(series.items()):
        color = _PALETTE[i % len(_PALETTE)]
        pts = sorted(pts, key=lambda p: p.size)
        coords = " ".join(f"{sx(p.size):.2f},{sy(math.log10(p.cost)):.2f}" for p in pts)
        dash = ' stroke-dasharray="6,4"' if mode == "recycle" else ""
        out.append(f'<polyline class="series" points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"{dash}/>')
        for p in pts:
            out.append(f'<circle cx="{sx(p.size):.2f}" cy="{sy(math.log10(p.cost)):.2f}" r="3" fill="{color}"/>')
        ly = top + 14 + 20 * i
        lx = left + pw + 15
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 24}" y2="{ly - 4}" stroke="{color}" stroke-width="2"{dash}/>')
        out.append(f'<text class="legend" x="{lx + 30}" y="{ly}">{escape(f"{scheme} ({mode})")}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def maybe_write(path: Optional[str], text: str, stream) -> None:
    if path:
        write_atomic(path, text)
    else:
        stream.write(text)
