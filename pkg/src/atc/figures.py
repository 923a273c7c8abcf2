"""Matplotlib rendering of model graphs to image files.

Deterministic circular layout (worlds in canonical order), one labeled arrow
per transition, self-loops drawn as small arcs.  PNG metadata is stripped so
identical models produce identical files.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import FancyArrowPatch

from .kripke import KripkeModel

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"]


def _positions(n: int, radius: float = 1.0) -> list[tuple[float, float]]:
    return [
        (
            radius * math.cos(2 * math.pi * i / max(n, 1) + math.pi / 2),
            radius * math.sin(2 * math.pi * i / max(n, 1) + math.pi / 2),
        )
        for i in range(n)
    ]


def _world_label(model: KripkeModel, w: int) -> str:
    positives = [
        a for i, a in enumerate(model.sig.atoms) if (w >> i) & 1
    ]
    return "\n".join(positives) if positives else "(none)"


def render_model_png(
    model: KripkeModel,
    path: str,
    title: str | None = None,
    highlight_worlds: set[int] | None = None,
    highlight_arrows: set[tuple[str, int, int]] | None = None,
) -> None:
    highlight_worlds = highlight_worlds or set()
    highlight_arrows = highlight_arrows or set()
    order = model.sorted_worlds()
    pos = dict(zip(order, _positions(len(order))))
    fig, ax = plt.subplots(figsize=(5.5, 5.5))
    ax.set_axis_off()
    ax.set_xlim(-1.6, 1.6)
    ax.set_ylim(-1.6, 1.6)
    if title:
        ax.set_title(title, fontsize=10)
    if not order:
        ax.text(0, 0, "empty model", ha="center", va="center", fontsize=12)
    for w in order:
        x, y = pos[w]
        color = "#ffe8a0" if w in highlight_worlds else "#e8f0fe"
        circle = plt.Circle((x, y), 0.23, facecolor=color, edgecolor="#333333")
        ax.add_patch(circle)
        ax.text(x, y, _world_label(model, w), ha="center", va="center", fontsize=7)
    for ai, action in enumerate(model.sig.actions):
        color = _PALETTE[ai % len(_PALETTE)]
        for u, v in sorted(model.rel[action]):
            emphasized = (action, u, v) in highlight_arrows
            width = 2.2 if emphasized else 1.2
            if u == v:
                x, y = pos[u]
                loop = FancyArrowPatch(
                    (x - 0.08, y + 0.21),
                    (x + 0.08, y + 0.21),
                    connectionstyle="arc3,rad=2.4",
                    arrowstyle="-|>",
                    mutation_scale=9,
                    color=color,
                    linewidth=width,
                )
                ax.add_patch(loop)
                ax.text(x, y + 0.52, action, color=color, fontsize=7, ha="center")
                continue
            (x1, y1), (x2, y2) = pos[u], pos[v]
            arrow = FancyArrowPatch(
                (x1, y1),
                (x2, y2),
                connectionstyle="arc3,rad=0.15",
                arrowstyle="-|>",
                mutation_scale=10,
                shrinkA=18,
                shrinkB=18,
                color=color,
                linewidth=width,
            )
            ax.add_patch(arrow)
            mx, my = (x1 + x2) / 2, (y1 + y2) / 2
            ax.text(
                mx + 0.12 * (y2 - y1),
                my - 0.12 * (x2 - x1),
                action,
                color=color,
                fontsize=7,
                ha="center",
            )
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
