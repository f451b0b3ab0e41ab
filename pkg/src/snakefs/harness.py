"""Multi-run experiment harness.

A variant name wires the optimizer: BSO and LSO explore around uniformly
random targets, while TLSO, PLSO, and LLSO use tournament, fitness-
proportional, and linear-rank target selection; BSO exploits with the direct
temperature-damped move and every other variant with the logarithmic spiral.

Runs are embarrassingly parallel: run i owns rng seed (base seed + i) and
draws its own stratified split from that stream, so results are identical
whether runs execute sequentially or across a thread pool. SNAKEFS_THREADS
caps the pool size.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .binary import TransferPolicy
from .data import Dataset, load_csv, normalize_min_max, split
from .dynamics import EXPLOIT_DIRECT, EXPLOIT_SPIRAL, IterationState, SoParams, step
from .evaluation import EvalResult, FitnessWeights, mask_evaluator
from .population import Bounds, init_population
from .selection import LINEAR_RANK, PROPORTIONAL, TOURNAMENT, UNIFORM, SelectionScheme

VARIANTS = ("BSO", "LSO", "TLSO", "PLSO", "LLSO")

THREADS_ENV_VAR = "SNAKEFS_THREADS"

_SCHEME_KIND = {
    "BSO": UNIFORM,
    "LSO": UNIFORM,
    "TLSO": TOURNAMENT,
    "PLSO": PROPORTIONAL,
    "LLSO": LINEAR_RANK,
}

# metrics summarized across runs, and whether larger values are better
SUMMARY_METRICS = ("accuracy", "sensitivity", "specificity", "fitness", "selected_count", "time")
_HIGHER_IS_BETTER = {"accuracy": True, "sensitivity": True, "specificity": True,
                     "fitness": False, "selected_count": False, "time": False}


def scheme_for_variant(variant: str, tournament_size: int = 3, eta_plus: float = 1.5) -> SelectionScheme:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    return SelectionScheme(kind=_SCHEME_KIND[variant], tournament_size=tournament_size, eta_plus=eta_plus)


def exploit_for_variant(variant: str) -> str:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    return EXPLOIT_DIRECT if variant == "BSO" else EXPLOIT_SPIRAL


@dataclass(frozen=True)
class ExperimentConfig:
    dataset_path: str
    variant: str = "TLSO"
    population_size: int = 50
    iterations: int = 100
    runs: int = 30
    seed: int = 42
    k: int = 5
    train_fraction: float = 0.7
    csv_header: bool = True
    label_column: int = -1
    so_params: SoParams = field(default_factory=SoParams)
    weights: FitnessWeights = field(default_factory=FitnessWeights)
    transfer_policy: TransferPolicy = field(default_factory=TransferPolicy)
    selection: SelectionScheme | None = None  # None derives from the variant

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")
        if self.population_size < 4:
            raise ValueError("population_size must be >= 4")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must lie strictly between 0 and 1")

    def resolved_selection(self) -> SelectionScheme:
        if self.selection is not None:
            return self.selection
        return scheme_for_variant(self.variant)


@dataclass
class RunRecord:
    seed: int
    best_mask: np.ndarray
    best_eval: EvalResult
    convergence: list[float]  # best-so-far fitness, index = iteration
    wall_time_s: float


@dataclass(frozen=True)
class MetricStats:
    mean: float
    std: float
    best: float
    worst: float


@dataclass(frozen=True)
class SummaryStats:
    metrics: dict[str, MetricStats]

    @classmethod
    def from_records(cls, records: list["RunRecord"]) -> "SummaryStats":
        if not records:
            raise ValueError("no run records to summarize")
        columns = {
            "accuracy": [r.best_eval.accuracy for r in records],
            "sensitivity": [r.best_eval.sensitivity for r in records],
            "specificity": [r.best_eval.specificity for r in records],
            "fitness": [r.best_eval.fitness for r in records],
            "selected_count": [float(r.best_eval.selected_count) for r in records],
            "time": [r.wall_time_s for r in records],
        }
        out: dict[str, MetricStats] = {}
        for name in SUMMARY_METRICS:
            values = np.asarray(columns[name], dtype=float)
            defined = values[~np.isnan(values)]
            if defined.size == 0:
                out[name] = MetricStats(*(float("nan"),) * 4)
                continue
            # population std: a single run summarizes with spread 0
            stats = MetricStats(
                mean=float(defined.mean()),
                std=float(defined.std(ddof=0)),
                best=float(defined.max() if _HIGHER_IS_BETTER[name] else defined.min()),
                worst=float(defined.min() if _HIGHER_IS_BETTER[name] else defined.max()),
            )
            out[name] = stats
        return cls(metrics=out)


def run_once(cfg: ExperimentConfig, run_seed: int, dataset: Dataset | None = None) -> RunRecord:
    """One optimization run: own rng stream, own split, full iteration loop."""
    t0 = time.perf_counter()
    ds = dataset if dataset is not None else load_csv(cfg.dataset_path, cfg.csv_header, cfg.label_column)
    rng = np.random.default_rng(run_seed)
    parts = split(ds, cfg.train_fraction, rng)
    train_n = normalize_min_max(parts.train)
    test_n = normalize_min_max(parts.test, reference=parts.train)
    normalized = replace(parts, train=train_n, test=test_n)
    evaluator = mask_evaluator(normalized, cfg.weights, cfg.k)

    bounds = Bounds(0.0, 1.0)
    pop = init_population(
        cfg.population_size, ds.feature_count, bounds, rng,
        policy=cfg.transfer_policy, evaluator=evaluator,
    )
    scheme = cfg.resolved_selection()
    exploit = exploit_for_variant(cfg.variant)
    convergence: list[float] = []
    state = IterationState.compute(0, cfg.iterations, cfg.so_params)
    for _ in range(cfg.iterations):
        pop, state = step(
            pop, state, cfg.so_params, scheme, evaluator, bounds,
            cfg.transfer_policy, rng, exploit=exploit,
        )
        convergence.append(pop.global_best.fitness)
    best = pop.global_best
    return RunRecord(
        seed=run_seed,
        best_mask=best.mask.copy(),
        best_eval=evaluator(best.mask),
        convergence=convergence,
        wall_time_s=time.perf_counter() - t0,
    )


def resolve_workers(runs: int, workers: int | None = None) -> int:
    """Worker count: explicit argument, else SNAKEFS_THREADS, else the core count."""
    if workers is None:
        env = os.environ.get(THREADS_ENV_VAR)
        if env is not None:
            try:
                workers = int(env)
            except ValueError:
                raise ValueError(f"{THREADS_ENV_VAR}={env!r} is not an integer") from None
        else:
            workers = os.cpu_count() or 1
    if workers < 1:
        raise ValueError("worker count must be >= 1")
    return min(workers, runs)


def run_experiment(
    cfg: ExperimentConfig,
    dataset: Dataset | None = None,
    workers: int | None = None,
) -> tuple[list[RunRecord], SummaryStats]:
    """Execute cfg.runs seeded runs and summarize them.

    Records come back in run order (seed base..base+runs-1) regardless of
    scheduling; a failed run aborts the experiment with its seed named.
    """
    ds = dataset if dataset is not None else load_csv(cfg.dataset_path, cfg.csv_header, cfg.label_column)
    seeds = [cfg.seed + i for i in range(cfg.runs)]
    pool_size = resolve_workers(cfg.runs, workers)

    def guarded(seed: int) -> RunRecord:
        try:
            return run_once(cfg, seed, ds)
        except Exception as exc:
            raise RuntimeError(f"run with seed {seed} failed: {exc}") from exc

    if pool_size == 1:
        records = [guarded(seed) for seed in seeds]
    else:
        with ThreadPoolExecutor(max_workers=pool_size) as pool:
            records = list(pool.map(guarded, seeds))
    return records, SummaryStats.from_records(records)
