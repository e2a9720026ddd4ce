"""Matplotlib figures: Gantt charts and finish-time trends, saved as SVG.

SVG output is byte-stable across runs: the id salt is pinned and the date
metadata is dropped.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .bench import format_mean  # noqa: E402

STYLE = {
    "svg.hashsalt": "dagsched",
    "svg.fonttype": "path",
    "font.family": "DejaVu Sans",
    "font.size": 10,
    "axes.spines.top": False,
    "axes.spines.right": False,
}
COLORS = {"GA": "#1f77b4", "LSH": "#d62728", "ORACLE": "#2ca02c"}
LINESTYLES = ("-", "--", ":", "-.")


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)


def gantt_svg(schedule, path, title=None):
    with plt.rc_context(STYLE):
        lanes = schedule.lanes()
        width = max(schedule.makespan, 1)
        fig, ax = plt.subplots(figsize=(8, 0.6 * schedule.p + 1.2))
        for proc, lane in enumerate(lanes):
            y = schedule.p - 1 - proc
            for i, pl in enumerate(lane):
                ax.broken_barh(
                    [(pl.start, pl.finish - pl.start)],
                    (y - 0.4, 0.8),
                    facecolors=("#8fb8de" if i % 2 == 0 else "#c6dbef"),
                    edgecolor="black",
                    linewidth=0.8,
                )
                ax.text((pl.start + pl.finish) / 2, y, str(pl.task), ha="center", va="center", fontsize=8)
        ax.set_yticks(range(schedule.p))
        ax.set_yticklabels([f"P{schedule.p - 1 - y}" for y in range(schedule.p)])
        ax.set_xlim(0, width)
        ax.set_ylim(-0.6, schedule.p - 0.4)
        ax.set_xlabel("time")
        ax.set_title(title or f"makespan = {schedule.makespan}")
        ax.axvline(schedule.makespan, color="grey", linestyle="--", linewidth=0.8)
        fig.tight_layout()
        _save(fig, path)


def trend_svg(summary, path):
    """Mean finish time against task count, one line per (algorithm, processor count)."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(7, 4.5))
        series: dict = {}
        for s in summary:
            series.setdefault((s.algorithm, s.p), []).append((s.n, float(format_mean(s.mean))))
        procs = sorted({p for _, p in series})
        for (alg, p), pts in sorted(series.items()):
            pts.sort()
            ax.plot(
                [x for x, _ in pts],
                [y for _, y in pts],
                marker="o",
                markersize=3,
                color=COLORS.get(alg, "black"),
                linestyle=LINESTYLES[procs.index(p) % len(LINESTYLES)],
                label=f"{alg} (p={p})",
            )
        ax.set_xlabel("number of tasks")
        ax.set_ylabel("mean finish time")
        ax.set_title("GA vs LSH")
        ax.legend(frameon=False, fontsize=8)
        fig.tight_layout()
        _save(fig, path)
