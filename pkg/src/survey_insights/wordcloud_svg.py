"""Deterministic wordcloud rendering as standalone SVG 1.1 documents.

Words are placed by a greedy Archimedean-spiral search, largest first, so
the same entries always produce the same bytes. Font size is linear in
weight: a word at the maximum weight renders at 72 pt, a (hypothetical)
zero-weight word at 12 pt.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import cos, sin
from typing import Sequence
from xml.sax.saxutils import escape

from .errors import EmptyWordcloud
from .insights import WordcloudEntry

FONT_MIN = 12.0
FONT_MAX = 72.0
WEIGHT_FLOOR = 0.01

# One hue per cluster id (cycled). Chosen for contrast on white.
PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
)

# Crude but fixed text metrics: average glyph width and line height as
# fractions of the font size. Only consistency matters for layout.
_CHAR_WIDTH = 0.62
_LINE_HEIGHT = 1.18
_BOX_GAP = 2.0

_SPIRAL_STEP = 0.3
_SPIRAL_RADIUS = 1.4
_SPIRAL_Y_SQUASH = 0.72
_MAX_SPIRAL_STEPS = 200_000


@dataclass
class PlacedWord:
    """A laid-out word: box center (x, y) with width/height in SVG units."""

    token: str
    cluster_id: int
    x: float
    y: float
    width: float
    height: float
    font_size: float
    color: str


def font_size_for(weight: float, max_weight: float) -> float:
    """Linear map of the floored weight onto [FONT_MIN, FONT_MAX]."""
    w = max(weight, WEIGHT_FLOOR)
    return FONT_MIN + (FONT_MAX - FONT_MIN) * (w / max_weight)


def _boxes_overlap(a: PlacedWord, bx: float, by: float, bw: float, bh: float) -> bool:
    return (
        abs(a.x - bx) * 2.0 < a.width + bw + _BOX_GAP
        and abs(a.y - by) * 2.0 < a.height + bh + _BOX_GAP
    )


def layout_wordcloud(
    entries: Sequence[WordcloudEntry], palette: Sequence[str] = PALETTE
) -> list[PlacedWord]:
    """Place entries around the origin, largest first, without box overlap."""
    if len(entries) == 0:
        raise EmptyWordcloud("no entries to lay out")
    floored = [max(e.weight, WEIGHT_FLOOR) for e in entries]
    max_weight = max(floored)
    order = sorted(
        range(len(entries)),
        key=lambda i: (-floored[i], entries[i].cluster_id, entries[i].token),
    )
    placed: list[PlacedWord] = []
    for rank, i in enumerate(order):
        entry = entries[i]
        size = font_size_for(entry.weight, max_weight)
        width = _CHAR_WIDTH * size * max(len(entry.token), 1)
        height = _LINE_HEIGHT * size
        # Each word starts its spiral at a different angle so the cloud
        # fills out radially instead of stacking along one ray.
        phase = 2.399963229728653 * rank  # golden angle
        x = y = 0.0
        for step in range(_MAX_SPIRAL_STEPS):
            theta = _SPIRAL_STEP * step
            x = _SPIRAL_RADIUS * theta * cos(theta + phase)
            y = _SPIRAL_RADIUS * theta * sin(theta + phase) * _SPIRAL_Y_SQUASH
            if not any(_boxes_overlap(p, x, y, width, height) for p in placed):
                break
        else:
            raise EmptyWordcloud("spiral search exhausted; entries too large to place")
        placed.append(
            PlacedWord(
                token=entry.token,
                cluster_id=entry.cluster_id,
                x=x,
                y=y,
                width=width,
                height=height,
                font_size=size,
                color=palette[entry.cluster_id % len(palette)],
            )
        )
    return placed


def render_wordcloud_svg(
    entries: Sequence[WordcloudEntry], palette: Sequence[str] = PALETTE
) -> str:
    """Render entries to an SVG document string. Identical inputs, identical bytes."""
    placed = layout_wordcloud(entries, palette)
    margin = 16.0
    min_x = min(p.x - p.width / 2 for p in placed) - margin
    max_x = max(p.x + p.width / 2 for p in placed) + margin
    min_y = min(p.y - p.height / 2 for p in placed) - margin
    max_y = max(p.y + p.height / 2 for p in placed) + margin
    view = f"{min_x:.2f} {min_y:.2f} {max_x - min_x:.2f} {max_y - min_y:.2f}"
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{view}">',
        f'<rect x="{min_x:.2f}" y="{min_y:.2f}" width="{max_x - min_x:.2f}" '
        f'height="{max_y - min_y:.2f}" fill="#ffffff"/>',
    ]
    for p in placed:
        baseline = p.y + p.font_size * 0.35  # optical vertical centering
        lines.append(
            f'<text x="{p.x:.2f}" y="{baseline:.2f}" font-size="{p.font_size:.2f}" '
            f'font-family="sans-serif" text-anchor="middle" fill="{p.color}">'
            f"{escape(p.token)}</text>"
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
