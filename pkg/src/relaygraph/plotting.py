"""Static figures for reports.  Uses the object-oriented matplotlib API
only, so no global backend state is touched."""

from __future__ import annotations

from pathlib import Path

import networkx as nx
from matplotlib.figure import Figure
from matplotlib.lines import Line2D

from .cycles import RCycle
from .graph import RGraph

__all__ = ["draw_rgraph", "draw_suite_summary", "draw_ring_report"]

BASE_STYLE = dict(color="0.15", linewidth=1.6, linestyle="-")
STAR_STYLE = dict(color="tab:blue", linewidth=1.2, linestyle="--")
CYCLE_COLOR = "tab:red"


def _save(fig: Figure, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, bbox_inches="tight", metadata={"Software": None} if path.suffix == ".png" else None)
    return path


def _layout(g: RGraph, seed: int) -> dict[int, tuple[float, float]]:
    h = nx.Graph()
    h.add_nodes_from(g.sorted_vertices())
    h.add_edges_from(sorted(g.base.edges), weight=2.0)
    h.add_edges_from(sorted(g.star.edges), weight=1.0)
    return nx.spring_layout(h, seed=seed, weight="weight")


def draw_rgraph(g: RGraph, path, cycle: RCycle | None = None, title: str | None = None,
                seed: int = 0) -> Path:
    """Base edges solid, star edges dashed; a cycle is overlaid in red."""
    pos = _layout(g, seed)
    fig = Figure(figsize=(6, 5))
    ax = fig.add_subplot()
    for style, edges in ((BASE_STYLE, g.base.edges), (STAR_STYLE, g.star.edges)):
        for a, b in sorted(edges):
            ax.plot(*zip(pos[a], pos[b]), zorder=1, **style)
    if cycle is not None:
        for seg in cycle.segments:
            for a, b in zip(seg, seg[1:]):
                ax.plot(*zip(pos[a], pos[b]), color=CYCLE_COLOR, linewidth=3.5, alpha=0.7, zorder=2)
        for a, b in cycle.links():
            ax.plot(*zip(pos[a], pos[b]), color=CYCLE_COLOR, linewidth=3.0, linestyle="--", alpha=0.7, zorder=2)
    xs = [pos[v][0] for v in g.sorted_vertices()]
    ys = [pos[v][1] for v in g.sorted_vertices()]
    ax.scatter(xs, ys, s=320, color="white", edgecolors="0.15", zorder=3)
    for v in g.sorted_vertices():
        ax.annotate(g.name(v), pos[v], ha="center", va="center", fontsize=8, zorder=4)
    handles = [Line2D([], [], **BASE_STYLE, label="E"), Line2D([], [], **STAR_STYLE, label="E*")]
    if cycle is not None:
        handles.append(Line2D([], [], color=CYCLE_COLOR, linewidth=3, label="R-cycle"))
    ax.legend(handles=handles, loc="best", fontsize=8, frameon=False)
    ax.set_axis_off()
    if title:
        ax.set_title(title)
    return _save(fig, path)


def draw_suite_summary(report: dict, path) -> Path:
    """Outcome bars plus one bar per counter of a fuzz report."""
    fig = Figure(figsize=(7, 3.5))
    left, right = fig.subplots(1, 2, gridspec_kw={"width_ratios": [1, 2]})
    outcomes = ["passed", "failed", "inconclusive"]
    left.bar(outcomes, [report[k] for k in outcomes], color=["tab:green", "tab:red", "tab:gray"])
    left.set_title(f"{report['suite']} (seed {report['seed']}, {report['trials']} trials)", fontsize=9)
    counters = report.get("counters", {})
    if counters:
        right.barh(list(counters), list(counters.values()), color="tab:blue")
        right.set_title("counters", fontsize=9)
    else:
        right.set_axis_off()
    for ax in (left, right):
        ax.tick_params(labelsize=8)
    return _save(fig, path)


def draw_ring_report(report: dict, path) -> Path:
    """Per-term singleton classes against support size of ``b``."""
    rows = report["per_t"]
    ts = [r["t"] for r in rows]
    fig = Figure(figsize=(5, 3.5))
    ax = fig.add_subplot()
    width = 0.27
    ax.bar([t - width for t in ts], [r["n_t"] for r in rows], width, label="n_t")
    ax.bar(ts, [r["N_t"] for r in rows], width, label="|N_t|")
    ax.bar([t + width for t in ts], [r["M_t_star"] for r in rows], width, label="|M_t*|")
    ax.set_xticks(ts)
    ax.set_xlabel("t")
    ax.legend(fontsize=8, frameon=False)
    ax.set_title(f"r != 1: {report['r_not_one']}, |L| = {report['L']}, |N| = {report['N']}", fontsize=9)
    return _save(fig, path)
