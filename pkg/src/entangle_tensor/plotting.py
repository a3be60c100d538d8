"""Matplotlib rendering of monotone and measurement-count curves to SVG.

Figures are rendered off-screen and returned as bytes. The SVG backend is
made reproducible by fixing the id hash salt and dropping the date stamp.
"""
from __future__ import annotations

import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

FIG_WIDTH = 5.5
FIG_HEIGHT = 3.8
ORDER_COLORS = ["black", "tab:red", "tab:blue", "tab:orange", "tab:green", "tab:purple", "tab:brown", "tab:pink"]

STYLE = {
    "svg.hashsalt": "entangle-tensor",
    "svg.fonttype": "none",
    "font.size": 9,
    "axes.linewidth": 0.6,
    "legend.fontsize": 8,
    "legend.frameon": False,
    "lines.linewidth": 1.2,
}


def _color(n):
    return ORDER_COLORS[(n - 1) % len(ORDER_COLORS)]


def _svg_bytes(fig) -> bytes:
    buf = io.BytesIO()
    fig.savefig(buf, format="svg", metadata={"Date": None}, bbox_inches="tight")
    plt.close(fig)
    return buf.getvalue()


def order_curves_svg(series, xlabel, ylabel, title="", logy=False, references=()) -> bytes:
    """Plot one curve per tensor order.

    Parameters
    ----------
    series : dict
        ``n -> (x, y)`` arrays, drawn solid in the order colour.
    references : sequence of (label, x, y)
        Extra curves drawn dashed in grey.
    """
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(FIG_WIDTH, FIG_HEIGHT))
        for n in sorted(series):
            x, y = (np.asarray(v, dtype=float) for v in series[n])
            if logy:
                keep = y > 0
                x, y = x[keep], y[keep]
            ax.plot(x, y, color=_color(n), label=f"n = {n}")
        for label, x, y in references:
            x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
            if logy:
                keep = y > 0
                x, y = x[keep], y[keep]
            ax.plot(x, y, color="0.4", linestyle="--", label=label)
        if logy:
            ax.set_yscale("log")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        ax.legend(loc="best")
        ax.grid(True, linewidth=0.3, color="0.85")
        return _svg_bytes(fig)


def labelled_curves_svg(curves, xlabel, ylabel, title="", logy=False) -> bytes:
    """Plot ``label -> (x, y)`` curves with the default colour cycle."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(FIG_WIDTH, FIG_HEIGHT))
        for label, (x, y) in curves.items():
            x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
            if logy:
                keep = y > 0
                x, y = x[keep], y[keep]
            ax.plot(x, y, label=label)
        if logy:
            ax.set_yscale("log")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        ax.legend(loc="best")
        ax.grid(True, linewidth=0.3, color="0.85")
        return _svg_bytes(fig)
