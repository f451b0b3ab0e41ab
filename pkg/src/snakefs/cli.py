"""Command-line front end.

Subcommands:
    run                 one variant on one dataset, full report directory
    compare             several variants side by side, shared base seed
    validate-selection  empirical draw frequencies vs closed-form probabilities

Settings resolve in three layers: built-in defaults, then a flat key=value
config file (--config), then explicit flags. `snakefs run --help` lists the
flags; config keys use the same names with underscores.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

import numpy as np

from .evaluation import FitnessWeights
from .binary import PAPER_LITERAL, STANDARD, TransferPolicy
from .dynamics import SoParams
from .harness import (
    VARIANTS,
    ExperimentConfig,
    SummaryStats,
    run_experiment,
)
from .reports import emit_reports
from .selection import KINDS, SelectionScheme, select, selection_probabilities

# defaults shared by `run` and `compare`; config-file keys mirror these names
_DEFAULTS = {
    "dataset": None,
    "variant": "TLSO",
    "population_size": 50,
    "iterations": 100,
    "runs": 30,
    "seed": 42,
    "k": 5,
    "train_fraction": 0.7,
    "alpha": 0.99,
    "tournament_size": 3,
    "eta_plus": 1.5,
    "k1": 0.5,
    "k2": 0.05,
    "k3": 2.0,
    "q_threshold": 0.25,
    "temp_threshold": 0.6,
    "mode_threshold": 0.6,
    "spiral_b": 1.0,
    "egg_hatch_prob": 0.5,
    "literal_spiral": False,
    "literal_transfer": False,
    "header": True,
    "label_column": -1,
    "out": "snakefs_report",
    "plots": True,
}

_BOOL_WORDS = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def load_config_file(path) -> dict:
    """Parse a flat `key = value` file; keys must be known setting names."""
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}: line {lineno}: expected 'key = value'")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key not in _DEFAULTS:
                raise ValueError(
                    f"{path}: line {lineno}: unknown setting {key!r}; "
                    f"known settings: {', '.join(sorted(_DEFAULTS))}"
                )
            values[key] = _coerce(key, value, path, lineno)
    return values


def _coerce(key: str, value: str, path, lineno: int):
    default = _DEFAULTS[key]
    try:
        if isinstance(default, bool):
            word = value.lower()
            if word not in _BOOL_WORDS:
                raise ValueError
            return _BOOL_WORDS[word]
        if isinstance(default, int):
            return int(value)
        if isinstance(default, float):
            return float(value)
        return value
    except ValueError:
        raise ValueError(f"{path}: line {lineno}: bad value {value!r} for {key!r}") from None


def _add_common_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--dataset", help="CSV dataset path")
    parser.add_argument("--config", help="flat key=value settings file; flags override it")
    parser.add_argument("--pop", "--population-size", dest="population_size", type=int)
    parser.add_argument("--iterations", type=int)
    parser.add_argument("--runs", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--k", type=int, help="neighbor count for the wrapped classifier")
    parser.add_argument("--train-fraction", dest="train_fraction", type=float)
    parser.add_argument("--alpha", type=float, help="error-rate weight; feature weight is 1 - alpha")
    parser.add_argument("--tournament-size", dest="tournament_size", type=int)
    parser.add_argument("--eta-plus", dest="eta_plus", type=float)
    parser.add_argument("--egg-hatch-prob", dest="egg_hatch_prob", type=float)
    parser.add_argument("--literal-spiral", dest="literal_spiral",
                        action=argparse.BooleanOptionalAction, default=None,
                        help="freeze the spiral angular factor at its printed constant")
    parser.add_argument("--literal-transfer", dest="literal_transfer",
                        action=argparse.BooleanOptionalAction, default=None,
                        help="invert the sigmoid thresholding rule")
    parser.add_argument("--header", dest="header", action=argparse.BooleanOptionalAction,
                        default=None, help="whether the CSV has a header row")
    parser.add_argument("--label-col", dest="label_column", type=int,
                        help="label column position, negatives count from the end")
    parser.add_argument("--out", help="report directory")
    parser.add_argument("--plots", dest="plots", action=argparse.BooleanOptionalAction,
                        default=None, help="render figures next to the CSV output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snakefs", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one variant and write a report directory")
    p_run.add_argument("--variant", choices=VARIANTS)
    _add_common_flags(p_run)

    p_cmp = sub.add_parser("compare", help="run several variants with a shared base seed")
    p_cmp.add_argument("--variants", nargs="+", help="variant names (space or comma separated)")
    _add_common_flags(p_cmp)

    p_val = sub.add_parser("validate-selection",
                           help="check empirical selection frequencies against theory")
    p_val.add_argument("--scheme", choices=KINDS, required=True)
    p_val.add_argument("--group-size", dest="group_size", type=int, default=10)
    p_val.add_argument("--draws", type=int, default=100_000)
    p_val.add_argument("--tournament-size", dest="tournament_size", type=int, default=3)
    p_val.add_argument("--eta-plus", dest="eta_plus", type=float, default=1.5)
    p_val.add_argument("--seed", type=int, default=42)
    p_val.add_argument("--tolerance", type=float, default=0.02)
    p_val.add_argument("--fitnesses", help="comma-separated fitness values (default: seeded random)")
    return parser


def _resolve_settings(args: argparse.Namespace) -> dict:
    settings = dict(_DEFAULTS)
    if args.config:
        if not os.path.exists(args.config):
            raise _UsageError(f"config file not found: {args.config}")
        settings.update(load_config_file(args.config))
    for key in _DEFAULTS:
        given = getattr(args, key, None)
        if given is not None:
            settings[key] = given
    if getattr(args, "variant", None) is not None:
        settings["variant"] = args.variant
    if settings["dataset"] is None:
        raise _UsageError("a dataset is required (--dataset or the config file)")
    return settings


def _config_from(settings: dict) -> ExperimentConfig:
    so = SoParams(
        k1=settings["k1"], k2=settings["k2"], k3=settings["k3"],
        q_threshold=settings["q_threshold"], temp_threshold=settings["temp_threshold"],
        mode_threshold=settings["mode_threshold"], spiral_b=settings["spiral_b"],
        spiral_cos_literal=settings["literal_spiral"], egg_hatch_prob=settings["egg_hatch_prob"],
    )
    alpha = settings["alpha"]
    weights = FitnessWeights(alpha=alpha, beta=1.0 - alpha)
    policy = TransferPolicy(mode=PAPER_LITERAL if settings["literal_transfer"] else STANDARD)
    scheme = SelectionScheme(
        kind={"BSO": "uniform", "LSO": "uniform", "TLSO": "tournament",
              "PLSO": "proportional", "LLSO": "linear-rank"}[settings["variant"]],
        tournament_size=settings["tournament_size"],
        eta_plus=settings["eta_plus"],
    )
    return ExperimentConfig(
        dataset_path=settings["dataset"],
        variant=settings["variant"],
        population_size=settings["population_size"],
        iterations=settings["iterations"],
        runs=settings["runs"],
        seed=settings["seed"],
        k=settings["k"],
        train_fraction=settings["train_fraction"],
        csv_header=settings["header"],
        label_column=settings["label_column"],
        so_params=so,
        weights=weights,
        transfer_policy=policy,
        selection=scheme,
    )


class _UsageError(Exception):
    pass


def _print_summary(stats: SummaryStats, label: str = ""):
    if label:
        print(f"== {label} ==")
    print(f"{'metric':<16}{'mean':>14}{'std':>14}{'best':>14}{'worst':>14}")
    for name, m in stats.metrics.items():
        print(f"{name:<16}{m.mean:>14.6g}{m.std:>14.6g}{m.best:>14.6g}{m.worst:>14.6g}")


def _cmd_run(args: argparse.Namespace) -> int:
    settings = _resolve_settings(args)
    cfg = _config_from(settings)
    records, stats = run_experiment(cfg)
    paths = emit_reports(records, stats, settings["out"], config=cfg, figures=settings["plots"])
    _print_summary(stats, label=f"{cfg.variant} on {cfg.dataset_path} ({cfg.runs} runs)")
    print("report files:")
    for name, path in paths.items():
        print(f"  {name}: {path}")
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    import csv as _csv

    settings = _resolve_settings(args)
    raw = args.variants or [settings["variant"]]
    names = [v for item in raw for v in item.split(",") if v]
    for v in names:
        if v not in VARIANTS:
            raise _UsageError(f"unknown variant {v!r}; choose from {', '.join(VARIANTS)}")
    out_dir = settings["out"]
    os.makedirs(out_dir, exist_ok=True)

    results = []
    used_dirs: dict[str, int] = {}
    base_cfg = _config_from(settings)
    for v in names:
        cfg = replace(base_cfg, variant=v, selection=None)
        records, stats = run_experiment(cfg)
        used_dirs[v] = used_dirs.get(v, 0) + 1
        sub = v if used_dirs[v] == 1 else f"{v}_{used_dirs[v]}"
        emit_reports(records, stats, os.path.join(out_dir, sub), config=cfg, figures=settings["plots"])
        results.append((v, records, stats))
        _print_summary(stats, label=v)

    path = os.path.join(out_dir, "compare.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = _csv.writer(fh)
        head = ["metric"]
        for v, _, _ in results:
            head += [f"{v}_mean", f"{v}_std", f"{v}_best", f"{v}_worst"]
        writer.writerow(head)
        for metric in results[0][2].metrics:
            row = [metric]
            for _, _, stats in results:
                m = stats.metrics[metric]
                row += [repr(m.mean), repr(m.std), repr(m.best), repr(m.worst)]
            writer.writerow(row)
    print(f"comparison table: {path}")

    if settings["plots"]:
        from .plots import save_comparison_plot

        # last run of a repeated variant wins the legend slot, which is fine:
        # repeats are identical by construction
        plot_path = save_comparison_plot(
            {v: records for v, records, _ in results},
            os.path.join(out_dir, "compare_convergence.png"),
        )
        print(f"comparison figure: {plot_path}")
    return 0


def _cmd_validate_selection(args: argparse.Namespace) -> int:
    scheme = SelectionScheme(kind=args.scheme, tournament_size=args.tournament_size,
                             eta_plus=args.eta_plus)
    rng = np.random.default_rng(args.seed)
    if args.fitnesses:
        fitnesses = [float(tok) for tok in args.fitnesses.split(",") if tok.strip()]
    else:
        fitnesses = list(rng.random(args.group_size))
    if args.draws < 1:
        raise _UsageError("--draws must be >= 1")
    theory = selection_probabilities(fitnesses, scheme)
    hits = np.zeros(len(fitnesses), dtype=np.int64)
    for _ in range(args.draws):
        hits[select(fitnesses, scheme, rng)] += 1
    empirical = hits / args.draws
    deviations = np.abs(empirical - theory)
    print(f"{'index':<8}{'fitness':>12}{'theory':>12}{'empirical':>12}{'abs dev':>12}")
    for i, f in enumerate(fitnesses):
        print(f"{i:<8}{f:>12.6f}{theory[i]:>12.6f}{empirical[i]:>12.6f}{deviations[i]:>12.6f}")
    worst = float(deviations.max())
    print(f"max abs deviation {worst:.6f} over {args.draws} draws (tolerance {args.tolerance})")
    if worst > args.tolerance:
        print("FAIL: empirical frequencies disagree with the closed form", file=sys.stderr)
        return 1
    print("OK: empirical frequencies match the closed form")
    return 0


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles --help (0) and usage errors (2)
        return int(exc.code or 0)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "compare":
            return _cmd_compare(args)
        return _cmd_validate_selection(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
