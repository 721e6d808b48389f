"""Figure rendering for report data.

Uses the object-oriented matplotlib API (Figure + Agg canvas) so no global
pyplot state or display backend is touched; safe in headless environments.
matplotlib is imported lazily so the library core works without it.
"""

from __future__ import annotations


def render_line_plot(
    path: str,
    series: dict[str, tuple[list, list]],
    title: str,
    xlabel: str,
    ylabel: str,
    logy: bool = False,
) -> str:
    """Write a PNG of one or more (xs, ys) series; returns the path."""
    from matplotlib.backends.backend_agg import FigureCanvasAgg
    from matplotlib.figure import Figure

    fig = Figure(figsize=(8.0, 4.5), dpi=120)
    FigureCanvasAgg(fig)
    ax = fig.add_subplot(111)
    for label, (xs, ys) in series.items():
        if len(xs) > 64:
            ax.plot(xs, ys, label=label, linewidth=1.0)
        else:
            ax.plot(xs, ys, label=label, linewidth=1.0, marker="o", markersize=3)
    if logy:
        ax.set_yscale("log")
    ax.set_title(title)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    if len(series) > 1:
        ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="png")
    return path
