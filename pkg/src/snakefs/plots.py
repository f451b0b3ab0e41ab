"""Figure rendering for experiment reports. Files only, no interactive backends."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .harness import RunRecord, SummaryStats


def save_convergence_plot(records: list[RunRecord], path, title: str | None = None) -> str:
    """Best-so-far fitness per iteration: faint per-run traces plus the mean."""
    curves = np.asarray([rec.convergence for rec in records], dtype=float)
    iterations = np.arange(curves.shape[1])
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for row in curves:
        ax.plot(iterations, row, color="steelblue", alpha=0.25, linewidth=0.8)
    ax.plot(iterations, curves.mean(axis=0), color="crimson", linewidth=2.0, label="mean of runs")
    ax.set_xlabel("iteration")
    ax.set_ylabel("best fitness so far")
    ax.set_title(title or f"Convergence over {len(records)} runs")
    ax.legend(loc="upper right")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)


def save_metric_summary_plot(stats: SummaryStats, path) -> str:
    """Mean with a std whisker for each summarized metric."""
    names = list(stats.metrics)
    means = np.array([stats.metrics[n].mean for n in names])
    stds = np.array([stats.metrics[n].std for n in names])
    fig, ax = plt.subplots(figsize=(7, 4.5))
    x = np.arange(len(names))
    ax.bar(x, np.nan_to_num(means), yerr=np.nan_to_num(stds), color="steelblue", capsize=4)
    ax.set_xticks(x)
    ax.set_xticklabels(names, rotation=30, ha="right")
    ax.set_ylabel("mean over runs")
    ax.set_title("Run summary")
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)


def save_comparison_plot(records_by_variant: dict[str, list[RunRecord]], path) -> str:
    """Mean convergence curve per variant on shared axes."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for variant, records in records_by_variant.items():
        curves = np.asarray([rec.convergence for rec in records], dtype=float)
        ax.plot(np.arange(curves.shape[1]), curves.mean(axis=0), linewidth=1.8, label=variant)
    ax.set_xlabel("iteration")
    ax.set_ylabel("mean best fitness so far")
    ax.set_title("Variant comparison")
    ax.legend(loc="upper right")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)
