"""Report emission: delimited outputs, config echo, and rendered figures.

All floats are written with repr(), the shortest representation that parses
back to the identical value, so files round-trip exactly and reruns of the
same seed produce byte-identical runs.csv / convergence.csv. Wall times are
kept out of runs.csv for that reason; they live in timings.csv and in the
time row of summary.csv.
"""
from __future__ import annotations

import csv
import json
import os
from dataclasses import asdict

from .harness import SUMMARY_METRICS, ExperimentConfig, MetricStats, RunRecord, SummaryStats


def _fmt(value) -> str:
    if isinstance(value, (int,)):
        return str(value)
    return repr(float(value))


def emit_reports(
    records: list[RunRecord],
    stats: SummaryStats,
    out_dir,
    config: ExperimentConfig | None = None,
    figures: bool = True,
) -> dict[str, str]:
    """Write summary.csv, runs.csv, convergence.csv, timings.csv, config.json.

    With figures enabled, convergence and metric-summary plots render next
    to the delimited files. Returns {artifact name: path}.
    """
    if not records:
        raise ValueError("no run records to report")
    os.makedirs(out_dir, exist_ok=True)
    paths: dict[str, str] = {}

    path = os.path.join(out_dir, "summary.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["metric", "mean", "std", "best", "worst"])
        for name in SUMMARY_METRICS:
            m = stats.metrics[name]
            writer.writerow([name, _fmt(m.mean), _fmt(m.std), _fmt(m.best), _fmt(m.worst)])
    paths["summary"] = path

    path = os.path.join(out_dir, "runs.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([
            "run", "seed", "fitness", "error_rate", "accuracy",
            "sensitivity", "specificity", "selected_count", "mask",
        ])
        for i, rec in enumerate(records):
            ev = rec.best_eval
            writer.writerow([
                i, rec.seed, _fmt(ev.fitness), _fmt(ev.error_rate), _fmt(ev.accuracy),
                _fmt(ev.sensitivity), _fmt(ev.specificity), ev.selected_count,
                "".join(str(int(b)) for b in rec.best_mask),
            ])
    paths["runs"] = path

    path = os.path.join(out_dir, "convergence.csv")
    iterations = len(records[0].convergence)
    if any(len(rec.convergence) != iterations for rec in records):
        raise ValueError("runs disagree on iteration count")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["iteration"] + [f"run_{i}" for i in range(len(records))])
        for it in range(iterations):
            writer.writerow([it] + [_fmt(rec.convergence[it]) for rec in records])
    paths["convergence"] = path

    path = os.path.join(out_dir, "timings.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["run", "seed", "wall_time_s"])
        for i, rec in enumerate(records):
            writer.writerow([i, rec.seed, _fmt(rec.wall_time_s)])
    paths["timings"] = path

    if config is not None:
        path = os.path.join(out_dir, "config.json")
        echo = asdict(config)
        echo["selection"] = asdict(config.resolved_selection())
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(echo, fh, indent=2, sort_keys=True)
            fh.write("\n")
        paths["config"] = path

    if figures:
        from .plots import save_convergence_plot, save_metric_summary_plot

        paths["convergence_plot"] = save_convergence_plot(
            records, os.path.join(out_dir, "convergence.png")
        )
        paths["metrics_plot"] = save_metric_summary_plot(
            stats, os.path.join(out_dir, "metrics.png")
        )
    return paths


def read_summary_csv(path) -> SummaryStats:
    """Parse summary.csv back into SummaryStats (exact round-trip)."""
    metrics: dict[str, MetricStats] = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            metrics[row["metric"]] = MetricStats(
                mean=float(row["mean"]),
                std=float(row["std"]),
                best=float(row["best"]),
                worst=float(row["worst"]),
            )
    missing = [name for name in SUMMARY_METRICS if name not in metrics]
    if missing:
        raise ValueError(f"summary file lacks metrics: {missing}")
    return SummaryStats(metrics=metrics)
