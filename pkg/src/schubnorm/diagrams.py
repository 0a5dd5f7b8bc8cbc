"""Render reference diagrams to PNG files.

Layout is deterministic: vertices sit at (slot, height), edges carry
their support set at the midpoint, and normal vertices get a square
box while the rest stay rounded.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from . import normality
from .rootdata import Coweight, pairing_2rho, parse_datum
from .sweeps import FigureSpec


def _components(spec: FigureSpec) -> dict[tuple[int, ...], int]:
    """Index each drawn vertex by connected component, left to right."""
    parent = {v: v for v in spec.nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for lo, hi, _ in spec.edges:
        parent[find(lo)] = find(hi)
    roots = sorted({find(v) for v in spec.nodes})
    by_root = {r: i for i, r in enumerate(roots)}
    return {v: by_root[find(v)] for v in spec.nodes}


def _positions(spec: FigureSpec, heights: dict) -> dict[tuple[int, ...], tuple]:
    component = _components(spec)
    columns: dict[tuple[int, int], list] = {}
    for v in sorted(spec.nodes):
        columns.setdefault((component[v], heights[v]), []).append(v)
    width = {c: 0 for c in component.values()}
    for (c, _), group in columns.items():
        width[c] = max(width[c], len(group))
    offset = {}
    x = 0
    for c in sorted(width):
        offset[c] = x
        x += width[c] + 1
    positions = {}
    for (c, _), group in sorted(columns.items()):
        pad = (width[c] - len(group)) / 2
        for slot, v in enumerate(group):
            positions[v] = (offset[c] + pad + slot, heights[v])
    return positions


def _label(v: tuple[int, ...]) -> str:
    return "(" + ",".join(str(c) for c in v) + ")"


def render_figure(spec: FigureSpec, directory: Path) -> Path:
    datum = parse_datum(spec.datum)
    heights = {v: int(pairing_2rho(datum.system, Coweight(v))) for v in spec.nodes}
    positions = _positions(spec, heights)
    fig, ax = plt.subplots(figsize=(7, 1.2 + 0.22 * max(heights.values(), default=1)))
    for lo, hi, support in spec.edges:
        (x0, y0), (x1, y1) = positions[lo], positions[hi]
        ax.plot([x0, x1], [y0, y1], color="0.45", linewidth=1.0, zorder=1)
        ax.text(
            (x0 + x1) / 2,
            (y0 + y1) / 2,
            "{" + ",".join(str(i) for i in support) + "}",
            fontsize=6,
            color="0.3",
            ha="center",
            va="center",
            bbox={"boxstyle": "round,pad=0.1", "fc": "white", "ec": "none"},
            zorder=2,
        )
    for v, (x, y) in positions.items():
        normal = normality.oracle(datum, Coweight(v), spec.char).status
        style = "square,pad=0.25" if normal == normality.NORMAL else "round,pad=0.25"
        ax.text(
            x, y, _label(v),
            fontsize=8,
            ha="center",
            va="center",
            bbox={"boxstyle": style, "fc": "white", "ec": "black"},
            zorder=3,
        )
    ax.set_title(f"{spec.datum}, characteristic {spec.char}", fontsize=10)
    ax.set_axis_off()
    ax.margins(0.08)
    target = Path(directory) / f"{spec.key}.png"
    fig.savefig(target, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return target
