"""Deterministic SVG output for factor maps, dendrograms and metric charts.

All coordinates are written with three decimals so the same model always
produces the same bytes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence
from xml.sax.saxutils import escape, quoteattr

from .cluster import Dendrogram

MARGIN = 48.0
SERIES_COLORS = ("#1f4e79", "#b5651d", "#2e7d32", "#6a1b9a", "#00838f", "#5d4037", "#ad1457")
HIGHLIGHT_COLOR = "#c62828"


@dataclass(frozen=True)
class PlotModel:
    """Renderer-agnostic description of a scatter or line chart.

    Every point belongs to a series; each series is drawn with its own
    glyph, except series listed in ``text_series`` which are drawn as their
    labels (word overlays).
    """

    kind: str
    xs: tuple[float, ...]
    ys: tuple[float, ...]
    labels: tuple[str, ...]
    series: tuple[str, ...]
    glyphs: Mapping[str, str]
    masses: tuple[float, ...] = ()
    x_caption: str = ""
    y_caption: str = ""
    title: str = ""
    highlight: frozenset[int] = frozenset()
    padded_axes: tuple[int, ...] = ()
    text_series: frozenset[str] = frozenset()
    annotations: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("scatter", "line"):
            raise ValueError(f"unsupported plot kind {self.kind!r}")
        n = len(self.xs)
        if not (len(self.ys) == len(self.labels) == len(self.series) == n):
            raise ValueError("xs, ys, labels and series must have equal length")
        if self.masses and len(self.masses) != n:
            raise ValueError("masses must match the point count")
        if self.annotations and len(self.annotations) != n:
            raise ValueError("annotations must match the point count")
        missing = set(self.series) - set(self.glyphs) - set(self.text_series)
        if missing:
            raise ValueError(f"no glyph for series {sorted(missing)}")
        vals = list(self.glyphs.values())
        if len(set(vals)) != len(vals):
            raise ValueError("glyphs must be unique per series")

    @property
    def series_order(self) -> list[str]:
        seen: dict[str, None] = {}
        for s in self.series:
            seen.setdefault(s, None)
        return list(seen)


def default_glyphs(labels: Sequence[str]) -> dict[str, str]:
    """First letter of each label, upper-cased; repeats get a digit suffix (S, S2, S3)."""
    out: dict[str, str] = {}
    used: set[str] = set()
    for label in labels:
        if label in out:
            continue
        stripped = label.strip()
        base = stripped[0].upper() if stripped else "?"
        glyph, k = base, 1
        while glyph in used:
            k += 1
            glyph = f"{base}{k}"
        used.add(glyph)
        out[label] = glyph
    return out


def fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def _header(width: float, height: float, title: str) -> list[str]:
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{fmt(width)}" '
        f'height="{fmt(height)}" viewBox="0 0 {fmt(width)} {fmt(height)}" '
        'font-family="Helvetica, Arial, sans-serif">',
        f'<rect x="0" y="0" width="{fmt(width)}" height="{fmt(height)}" fill="#ffffff"/>',
    ]
    if title:
        parts.append(
            f'<text class="title" x="{fmt(width / 2)}" y="{fmt(MARGIN / 2)}" '
            f'text-anchor="middle" font-size="14">{escape(title)}</text>'
        )
    return parts


def _series_color(order: list[str], name: str) -> str:
    return SERIES_COLORS[order.index(name) % len(SERIES_COLORS)]


def render_factor_map(model: PlotModel, size: int = 640) -> str:
    """SVG scatter with equal x/y scaling so chi-squared geometry is not distorted."""
    if model.kind != "scatter":
        raise ValueError("render_factor_map needs a scatter model")
    if not model.xs:
        raise ValueError("cannot render an empty model")
    w = h = float(size)
    xs = list(model.xs) + [0.0]
    ys = list(model.ys) + [0.0]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    span_x, span_y = xmax - xmin, ymax - ymin
    inner = w - 2 * MARGIN
    span = max(span_x, span_y)
    scale = inner / span if span > 0 else 1.0
    cx, cy = (xmin + xmax) / 2, (ymin + ymax) / 2

    def px(x):
        return w / 2 + (x - cx) * scale

    def py(y):
        return h / 2 - (y - cy) * scale

    parts = _header(w, h, model.title)
    ox, oy = px(0.0), py(0.0)
    parts.append(
        f'<line class="axis" x1="{fmt(MARGIN)}" y1="{fmt(oy)}" x2="{fmt(w - MARGIN)}" '
        f'y2="{fmt(oy)}" stroke="#999999" stroke-width="0.5"/>'
    )
    parts.append(
        f'<line class="axis" x1="{fmt(ox)}" y1="{fmt(MARGIN)}" x2="{fmt(ox)}" '
        f'y2="{fmt(h - MARGIN)}" stroke="#999999" stroke-width="0.5"/>'
    )
    parts.append(
        f'<text class="caption" x="{fmt(w - MARGIN)}" y="{fmt(h - MARGIN / 3)}" '
        f'text-anchor="end" font-size="11">{escape(model.x_caption)}</text>'
    )
    parts.append(
        f'<text class="caption" x="{fmt(MARGIN / 3)}" y="{fmt(MARGIN)}" font-size="11" '
        f'transform="rotate(-90 {fmt(MARGIN / 3)} {fmt(MARGIN)})" text-anchor="end">'
        f"{escape(model.y_caption)}</text>"
    )
    if model.padded_axes:
        axes = ", ".join(str(a) for a in model.padded_axes)
        parts.append(
            f'<text class="note" x="{fmt(MARGIN)}" y="{fmt(h - MARGIN / 3)}" font-size="10" '
            f'fill="#666666">axis {axes} absent; drawn at 0</text>'
        )

    order = model.series_order
    for i, (x, y, label, s) in enumerate(zip(model.xs, model.ys, model.labels, model.series)):
        X, Y = fmt(px(x)), fmt(py(y))
        if s in model.text_series:
            parts.append(
                f'<text class="word" x="{X}" y="{Y}" font-size="10" fill="#777777" '
                f'text-anchor="middle">{escape(label)}</text>'
            )
            continue
        hi = i in model.highlight
        cls = "glyph outlier" if hi else "glyph"
        color = HIGHLIGHT_COLOR if hi else _series_color(order, s)
        weight = ' font-weight="bold"' if hi else ""
        size_px = 15 if hi else 12
        parts.append(
            f'<text class={quoteattr(cls)} data-series={quoteattr(s)} data-index="{i}" '
            f'x="{X}" y="{Y}" font-size="{size_px}" fill="{color}"{weight} '
            f'text-anchor="middle" dominant-baseline="central">'
            f"<title>{escape(label)}</title>{escape(model.glyphs[s])}</text>"
        )
        if model.annotations:
            parts.append(
                f'<text class="point-label" x="{fmt(px(x) + 7)}" y="{fmt(py(y) - 6)}" '
                f'font-size="8" fill="#444444">{escape(model.annotations[i])}</text>'
            )

    glyph_series = [s for s in order if s not in model.text_series]
    if len(glyph_series) > 1:
        for k, s in enumerate(glyph_series):
            y = MARGIN + 14 * k
            parts.append(
                f'<text class="legend" x="{fmt(w - MARGIN)}" y="{fmt(y)}" font-size="11" '
                f'text-anchor="end" fill="{_series_color(order, s)}">'
                f"{escape(model.glyphs[s])} = {escape(s)}</text>"
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_line_chart(model: PlotModel, size: tuple[int, int] = (720, 360)) -> str:
    if model.kind != "line":
        raise ValueError("render_line_chart needs a line model")
    if not model.xs:
        raise ValueError("cannot render an empty model")
    w, h = float(size[0]), float(size[1])
    xmin, xmax = min(model.xs), max(model.xs)
    ymin, ymax = min(model.ys), max(model.ys)
    if xmax == xmin:
        xmin, xmax = xmin - 1, xmax + 1
    if ymax == ymin:
        ymin, ymax = ymin - 1, ymax + 1

    def px(x):
        return MARGIN + (x - xmin) / (xmax - xmin) * (w - 2 * MARGIN)

    def py(y):
        return h - MARGIN - (y - ymin) / (ymax - ymin) * (h - 2 * MARGIN)

    parts = _header(w, h, model.title)
    parts.append(
        f'<line class="axis" x1="{fmt(MARGIN)}" y1="{fmt(h - MARGIN)}" x2="{fmt(w - MARGIN)}" '
        f'y2="{fmt(h - MARGIN)}" stroke="#999999"/>'
    )
    parts.append(
        f'<line class="axis" x1="{fmt(MARGIN)}" y1="{fmt(MARGIN)}" x2="{fmt(MARGIN)}" '
        f'y2="{fmt(h - MARGIN)}" stroke="#999999"/>'
    )
    for val in (ymin, ymax):
        parts.append(
            f'<text class="tick" x="{fmt(MARGIN - 4)}" y="{fmt(py(val))}" font-size="9" '
            f'text-anchor="end">{fmt(val)}</text>'
        )
    pts = " ".join(f"{fmt(px(x))},{fmt(py(y))}" for x, y in zip(model.xs, model.ys))
    parts.append(f'<polyline class="series" points="{pts}" fill="none" stroke="{SERIES_COLORS[0]}"/>')
    for i, (x, y, label, s) in enumerate(zip(model.xs, model.ys, model.labels, model.series)):
        parts.append(
            f'<text class="glyph" data-index="{i}" x="{fmt(px(x))}" y="{fmt(py(y))}" '
            f'font-size="10" text-anchor="middle" dominant-baseline="central">'
            f"<title>{escape(label)}: {fmt(y)}</title>{escape(model.glyphs[s])}</text>"
        )
    parts.append(
        f'<text class="caption" x="{fmt(w / 2)}" y="{fmt(h - MARGIN / 3)}" font-size="11" '
        f'text-anchor="middle">{escape(model.x_caption)}</text>'
    )
    parts.append(
        f'<text class="caption" x="{fmt(MARGIN / 3)}" y="{fmt(h / 2)}" font-size="11" '
        f'transform="rotate(-90 {fmt(MARGIN / 3)} {fmt(h / 2)})" text-anchor="middle">'
        f"{escape(model.y_caption)}</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_dendrogram(dend: Dendrogram, labels: Sequence[str] | None = None,
                      size: tuple[int, int] = (900, 420), title: str = "") -> str:
    """Leaves left to right in segment order, merge height upwards.

    Each merge is a bracket path carrying ``data-height`` and ``data-span``.
    Merges lower than their predecessor (possible with Ward) get the
    ``inversion`` class and are drawn where they fall.
    """
    n = dend.leaf_count
    if n < 1 or (n > 1 and not dend.merges):
        raise ValueError("cannot render an empty dendrogram")
    labels = list(labels) if labels is not None else [str(i) for i in range(n)]
    if len(labels) != n:
        raise ValueError(f"{len(labels)} labels for {n} leaves")
    w, h = float(size[0]), float(size[1])
    label_band = 110.0
    base = h - label_band
    top = MARGIN
    hmax = max(dend.heights, default=0.0)
    step = (w - 2 * MARGIN) / n

    def ypos(height):
        return base - (height / hmax * (base - top) if hmax > 0 else 0.0)

    pos: dict[int, tuple[float, float]] = {
        i: (MARGIN + (i + 0.5) * step, base) for i in range(n)
    }
    parts = _header(w, h, title)
    parts.append(
        f'<line class="axis" x1="{fmt(MARGIN / 2)}" y1="{fmt(top)}" x2="{fmt(MARGIN / 2)}" '
        f'y2="{fmt(base)}" stroke="#999999"/>'
    )
    for val in (0.0, hmax):
        parts.append(
            f'<text class="tick" x="{fmt(MARGIN / 2 + 3)}" y="{fmt(ypos(val))}" font-size="9">'
            f"{fmt(val)}</text>"
        )
    inversions = set(dend.inversions)
    for t, mg in enumerate(dend.merges):
        xl, yl = pos[mg.left]
        xr, yr = pos[mg.right]
        ym = ypos(mg.height)
        cls = "merge inversion" if t in inversions else "merge"
        stroke = HIGHLIGHT_COLOR if t in inversions else "#333333"
        parts.append(
            f'<path class="{cls}" data-merge="{t}" data-height="{fmt(mg.height)}" '
            f'data-span="{mg.span[0]}-{mg.span[1]}" '
            f'd="M {fmt(xl)} {fmt(yl)} V {fmt(ym)} H {fmt(xr)} V {fmt(yr)}" '
            f'fill="none" stroke="{stroke}" stroke-width="1"/>'
        )
        pos[n + t] = ((xl + xr) / 2, ym)
    for i, label in enumerate(labels):
        x = MARGIN + (i + 0.5) * step
        y = base + 8
        parts.append(
            f'<text class="leaf-label" data-index="{i}" x="{fmt(x)}" y="{fmt(y)}" font-size="9" '
            f'transform="rotate(60 {fmt(x)} {fmt(y)})">{escape(label)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
