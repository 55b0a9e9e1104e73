"""Deterministic CSV/JSON/SVG writers shared by the command-line reports.

Floating-point values serialise with 17 significant digits so every value
round-trips exactly and identical runs produce byte-identical files.  The
SVG emitter is a minimal polyline-plus-axes plotter with no plotting
dependency; the numbers in CSV/JSON are the contract, the plots are a
convenience.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

FLOAT_FORMAT = ".17g"

__all__ = ["format_float", "json_dumps", "write_json", "write_csv", "write_svg_polyline"]


def format_float(x: float) -> str:
    value = float(x)
    if not math.isfinite(value):
        raise ValueError(f"cannot serialise non-finite value {value!r}")
    return format(value, FLOAT_FORMAT)


def json_dumps(obj, indent: int = 0) -> str:
    """Serialise to JSON with 17-significant-digit floats and stable ordering.

    Dict keys keep insertion order (reports are built deterministically), so
    identical inputs yield identical bytes.
    """
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f"{inner}{json.dumps(str(key))}: {json_dumps(value, indent + 1)}"
            for key, value in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ",\n".join(f"{inner}{json_dumps(value, indent + 1)}" for value in obj)
        return "[\n" + items + "\n" + pad + "]"
    # numpy scalars and similar duck-typed numbers
    if hasattr(obj, "item"):
        return json_dumps(obj.item(), indent)
    raise TypeError(f"cannot serialise {type(obj).__name__} to JSON")


def write_json(path: Path, obj) -> None:
    Path(path).write_text(json_dumps(obj) + "\n", encoding="utf-8", newline="\n")


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if hasattr(value, "item"):
        return _format_cell(value.item())
    return str(value)


def write_csv(path: Path, header, rows) -> None:
    """Write a quoted-as-needed CSV with a header row and 17-digit floats."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([_format_cell(cell) for cell in row])


def _svg_num(x: float) -> str:
    return format(float(x), ".6g")


def write_svg_polyline(
    path: Path,
    xs,
    ys,
    *,
    title: str,
    x_label: str,
    y_label: str,
    width: int = 640,
    height: int = 440,
) -> None:
    """Minimal static plot: an axes box, extreme-value tick labels, one polyline."""
    xs = [float(x) for x in xs]
    ys = [float(y) for y in ys]
    if len(xs) != len(ys) or not xs:
        raise ValueError("xs and ys must be equal-length, nonempty sequences")
    margin_left, margin_right, margin_top, margin_bottom = 70, 20, 40, 50
    plot_w = width - margin_left - margin_right
    plot_h = height - margin_top - margin_bottom
    x_min, x_max = min(xs), max(xs)
    y_min, y_max = min(ys), max(ys)
    if x_max == x_min:
        x_min, x_max = x_min - 0.5, x_max + 0.5
    if y_max == y_min:
        y_min, y_max = y_min - 0.5, y_max + 0.5

    def px(x: float) -> float:
        return margin_left + (x - x_min) / (x_max - x_min) * plot_w

    def py(y: float) -> float:
        return margin_top + (y_max - y) / (y_max - y_min) * plot_h

    points = " ".join(f"{_svg_num(px(x))},{_svg_num(py(y))}" for x, y in zip(xs, ys))
    x0, x1 = margin_left, margin_left + plot_w
    y0, y1 = margin_top, margin_top + plot_h
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.6g}" y="24" text-anchor="middle" font-size="15" '
        f'font-family="sans-serif">{title}</text>',
        f'<line x1="{x0}" y1="{y1}" x2="{x1}" y2="{y1}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
        f'<text x="{x0}" y="{y1 + 18}" text-anchor="middle" font-size="11" '
        f'font-family="sans-serif">{_svg_num(x_min)}</text>',
        f'<text x="{x1}" y="{y1 + 18}" text-anchor="middle" font-size="11" '
        f'font-family="sans-serif">{_svg_num(x_max)}</text>',
        f'<text x="{x0 - 6}" y="{y1 + 4}" text-anchor="end" font-size="11" '
        f'font-family="sans-serif">{_svg_num(y_min)}</text>',
        f'<text x="{x0 - 6}" y="{y0 + 4}" text-anchor="end" font-size="11" '
        f'font-family="sans-serif">{_svg_num(y_max)}</text>',
        f'<text x="{(x0 + x1) / 2:.6g}" y="{height - 12}" text-anchor="middle" '
        f'font-size="12" font-family="sans-serif">{x_label}</text>',
        f'<text x="16" y="{(y0 + y1) / 2:.6g}" text-anchor="middle" font-size="12" '
        f'font-family="sans-serif" transform="rotate(-90 16 {(y0 + y1) / 2:.6g})">{y_label}</text>',
        f'<polyline fill="none" stroke="#1f77b4" stroke-width="1.5" points="{points}"/>',
        "</svg>",
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
