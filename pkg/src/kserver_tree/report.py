"""Delimited output and figure rendering for the bench report path."""

from __future__ import annotations

import csv
from typing import IO, Sequence

__all__ = ["BENCH_HEADER", "write_bench_csv", "render_bench_figure"]

BENCH_HEADER = ("n", "k", "q", "total_visits", "visits_per_query", "wall_time_s")


def write_bench_csv(rows: Sequence[tuple], stream: IO[str]) -> None:
    """RFC-4180 CSV: header plus one row per benchmarked configuration."""
    writer = csv.writer(stream)
    writer.writerow(BENCH_HEADER)
    for row in rows:
        writer.writerow(row)


def render_bench_figure(rows: Sequence[tuple], path: str) -> None:
    """Render the scaling figure for a bench run to an image file.

    Plots visits/query and wall time against whichever of n or k varies
    across the rows (row index when neither does).
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = [row[0] for row in rows]
    ks = [row[1] for row in rows]
    vpq = [row[4] for row in rows]
    wall = [row[5] for row in rows]
    if len(set(ns)) > 1:
        xs, label, logx = ns, "n (nodes)", True
    elif len(set(ks)) > 1:
        xs, label, logx = ks, "k (servers)", True
    else:
        xs, label, logx = list(range(1, len(rows) + 1)), "run", False

    fig, (ax_v, ax_t) = plt.subplots(1, 2, figsize=(9.0, 3.6))
    ax_v.plot(xs, vpq, "o-", color="tab:blue")
    ax_v.set_xlabel(label)
    ax_v.set_ylabel("segment-tree visits / query")
    ax_t.plot(xs, wall, "s-", color="tab:orange")
    ax_t.set_xlabel(label)
    ax_t.set_ylabel("query wall time (s)")
    if logx:
        ax_v.set_xscale("log", base=2)
        ax_t.set_xscale("log", base=2)
    for ax in (ax_v, ax_t):
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
