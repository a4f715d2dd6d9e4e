"""Figures for verification runs."""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .enumeration import EnumerationSummary  # noqa: E402


def plot_s3_histograms(summaries: Sequence[EnumerationSummary], path: str) -> None:
    """One bar panel per order: number of classes at each s3 value, log scale.

    The characterized band n-3..n is shaded.
    """
    k = len(summaries)
    fig, axes = plt.subplots(1, k, figsize=(3.2 * k + 0.6, 3.2), squeeze=False)
    for ax, s in zip(axes[0], summaries):
        values = list(s.s3_histogram)
        counts = [s.s3_histogram[v] for v in values]
        ax.axvspan(s.n - 3.5, s.n + 0.5, color="0.9", zorder=0)
        ax.bar(values, counts, color="tab:blue", zorder=2)
        ax.set_yscale("log")
        ax.set_xlim(0.5, s.n + 0.5)
        ax.set_xticks(range(1, s.n + 1))
        ax.set_title(f"n = {s.n} ({s.total_connected} classes)", fontsize=10)
        ax.set_xlabel("$s_3$")
    axes[0][0].set_ylabel("classes")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
