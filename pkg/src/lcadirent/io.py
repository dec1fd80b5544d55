"""CSV, SVG and JSON writers, plus the JSON schemas of the reports."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import IO, Iterable, Sequence

import jsonschema

CSV_HEADER = "theta,entropy"

SVG_WIDTH, SVG_HEIGHT = 800, 500
_MARGIN = 50


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _open_out(target):
    if target is None or hasattr(target, "write"):
        return target, False
    return open(target, "w", newline="\n", encoding="utf-8"), True


def emit_csv(samples: Iterable[Sequence[float]], target: str | Path | IO[str],
             scale: float = 1.0) -> None:
    """Write ``theta,entropy`` rows sorted by theta.

    ``scale`` divides the entropy column (log-base conversion).
    """
    rows = sorted((float(t), float(h)) for t, h in samples)
    fh, close = _open_out(target)
    try:
        fh.write(CSV_HEADER + "\n")
        for t, h in rows:
            fh.write(f"{_fmt(t)},{_fmt(h / scale)}\n")
    finally:
        if close:
            fh.close()


def emit_svg(samples: Sequence[Sequence[float]], target: str | Path | IO[str],
             markers: Iterable[float] = (), scale: float = 1.0,
             title: str = "") -> None:
    """Single-polyline plot with dashed vertical markers, 800x500 viewBox."""
    pts = sorted((float(t), float(h) / scale) for t, h in samples)
    if len(pts) < 2:
        raise ValueError("need at least 2 samples to plot")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, x1 = xs[0], xs[-1]
    y0, y1 = min(0.0, min(ys)), max(ys)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    w, h = SVG_WIDTH - 2 * _MARGIN, SVG_HEIGHT - 2 * _MARGIN

    def sx(x):
        return _MARGIN + (x - x0) / (x1 - x0) * w

    def sy(y):
        return SVG_HEIGHT - _MARGIN - (y - y0) / (y1 - y0) * h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}" '
        f'width="{SVG_WIDTH}" height="{SVG_HEIGHT}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{SVG_WIDTH / 2:.2f}" y="25" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="14">{_escape(title)}</text>')
    bottom, left = SVG_HEIGHT - _MARGIN, _MARGIN
    out.append(f'<line x1="{left}" y1="{bottom}" x2="{SVG_WIDTH - _MARGIN}" '
               f'y2="{bottom}" stroke="black"/>')
    out.append(f'<line x1="{left}" y1="{_MARGIN}" x2="{left}" y2="{bottom}" stroke="black"/>')
    for yv in (y0, 0.5 * (y0 + y1), y1):
        out.append(f'<text x="{left - 5}" y="{sy(yv) + 4:.2f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="10">{yv:.4g}</text>')
    for xv in (x0, x1):
        out.append(f'<text x="{sx(xv):.2f}" y="{bottom + 15}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="10">{xv:.4g}</text>')
    for mk in sorted(markers):
        if x0 <= mk <= x1:
            X = sx(mk)
            out.append(f'<line class="marker" x1="{X:.2f}" y1="{_MARGIN}" x2="{X:.2f}" '
                       f'y2="{bottom}" stroke="gray" stroke-dasharray="4,4"/>')
            out.append(f'<text x="{X:.2f}" y="{bottom + 28}" text-anchor="middle" '
                       f'font-family="sans-serif" font-size="9">{mk:.4f}</text>')
    poly = " ".join(f"{sx(x):.3f},{sy(y):.3f}" for x, y in pts)
    out.append(f'<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{poly}"/>')
    out.append("</svg>")
    fh, close = _open_out(target)
    try:
        fh.write("\n".join(out) + "\n")
    finally:
        if close:
            fh.close()


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def dump_json(data, target=None) -> str:
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if target is not None:
        fh, close = _open_out(target)
        try:
            fh.write(text)
        finally:
            if close:
                fh.close()
    return text


def log_scale(base: str, m: int | None = None) -> float:
    """Divisor that converts nats to the requested base (``e``, ``2``, ``10``, ``m``)."""
    if base == "e":
        return 1.0
    if base == "2":
        return math.log(2)
    if base == "10":
        return math.log(10)
    if base == "m":
        if m is None or m < 2:
            raise ValueError("log base 'm' needs a modulus")
        return math.log(m)
    raise ValueError(f"unknown log base {base!r}")


# -- schemas ------------------------------------------------------------------

_FRACTION = {"oneOf": [{"type": "string", "pattern": r"^\s*\d+(\s*/\s*\d+)?\s*$"},
                       {"type": "number", "minimum": 0}]}

CURVE_SCHEMA = {
    "type": "object",
    "required": ["terms", "breakpoints"],
    "properties": {
        "kind": {"enum": ["tde", "mtde"]},
        "terms": {"type": "array", "items": {
            "type": "object", "required": ["p", "k", "L", "R"],
            "properties": {"p": {"type": "integer", "minimum": 2},
                           "k": {"type": "integer", "minimum": 1},
                           "L": {"type": "integer", "maximum": 0},
                           "R": {"type": "integer", "minimum": 0}}}},
        "breakpoints": {"type": "array", "items": {"type": "number"}},
    },
}

MATRIX_SCHEMA = {
    "type": "object",
    "required": ["rows"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "rows": {"type": "array", "minItems": 1,
                 "items": {"type": "array", "items": _FRACTION}},
    },
}

VECTOR_SCHEMA = {
    "type": "object",
    "required": ["entries"],
    "properties": {"entries": {"type": "array", "minItems": 1, "items": _FRACTION}},
}

ESTIMATE_SCHEMA = {
    "type": "object",
    "required": ["rule", "theta", "half_width", "rows", "mode", "seed", "count",
                 "nats_per_row", "nats_per_site"],
    "properties": {
        "rule": {"type": "string"},
        "theta": {"type": "number"},
        "half_width": {"type": "integer", "minimum": 1},
        "rows": {"type": "integer", "minimum": 1},
        "mode": {"enum": ["exact", "sampled"]},
        "seed": {"type": ["integer", "null"]},
        "count": {"type": "integer", "minimum": 1},
        "nats_per_row": {"type": "number"},
        "nats_per_site": {"type": "number"},
        "nats_per_length": {"type": "number"},
    },
}

MARKOV_SCHEMA = {
    "type": "object",
    "required": ["matrix", "stationary"],
    "properties": {
        "matrix": MATRIX_SCHEMA,
        "stationary": {"type": "array", "items": _FRACTION},
        "stationary_decimal": {"type": "array", "items": {"type": "number"}},
        "exact": {"type": "boolean"},
    },
}


def validate(data, schema) -> None:
    jsonschema.validate(data, schema)
