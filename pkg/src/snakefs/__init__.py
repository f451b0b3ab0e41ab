"""snakefs: wrapper feature selection with binary snake optimizers.

The optimizer family shares one dynamics core (two-group population, food
and temperature schedules, fight/mate phases) and differs in how exploration
targets are selected (uniform, tournament, proportional, linear-rank) and in
the exploitation move (direct approach vs logarithmic spiral). Fitness wraps
a masked k-NN classifier: alpha * error + beta * selected/total features.
"""
from .binary import PAPER_LITERAL, STANDARD, TransferPolicy, binarize, sigmoid
from .data import Dataset, SplitDataset, load_csv, normalize_min_max, split
from .dynamics import (
    EXPLOIT_DIRECT,
    EXPLOIT_SPIRAL,
    IterationState,
    SoParams,
    explore_update,
    fight_update,
    food_approach_update,
    food_quantity,
    mate_update,
    replace_worst,
    spiral_range_low,
    spiral_update,
    step,
    temperature,
)
from .evaluation import (
    ConfusionCounts,
    EvalResult,
    FitnessWeights,
    confusion_metrics,
    evaluate,
    knn_predict,
    mask_evaluator,
)
from .harness import (
    VARIANTS,
    ExperimentConfig,
    MetricStats,
    RunRecord,
    SummaryStats,
    exploit_for_variant,
    resolve_workers,
    run_experiment,
    run_once,
    scheme_for_variant,
)
from .population import (
    FEMALE,
    MALE,
    Bounds,
    Snake,
    SnakePopulation,
    init_population,
    update_bests,
)
from .reports import emit_reports, read_summary_csv
from .selection import (
    KINDS,
    LINEAR_RANK,
    PROPORTIONAL,
    TOURNAMENT,
    UNIFORM,
    SelectionScheme,
    select,
    select_linear_rank,
    select_proportional,
    select_tournament,
    select_uniform,
    selection_probabilities,
)

__version__ = "0.1.0"

__all__ = [
    "PAPER_LITERAL", "STANDARD", "TransferPolicy", "binarize", "sigmoid",
    "Dataset", "SplitDataset", "load_csv", "normalize_min_max", "split",
    "EXPLOIT_DIRECT", "EXPLOIT_SPIRAL", "IterationState", "SoParams",
    "explore_update", "fight_update", "food_approach_update", "food_quantity",
    "mate_update", "replace_worst", "spiral_range_low", "spiral_update",
    "step", "temperature",
    "ConfusionCounts", "EvalResult", "FitnessWeights", "confusion_metrics",
    "evaluate", "knn_predict", "mask_evaluator",
    "VARIANTS", "ExperimentConfig", "MetricStats", "RunRecord", "SummaryStats",
    "exploit_for_variant", "resolve_workers", "run_experiment", "run_once",
    "scheme_for_variant",
    "FEMALE", "MALE", "Bounds", "Snake", "SnakePopulation", "init_population",
    "update_bests",
    "emit_reports", "read_summary_csv",
    "KINDS", "LINEAR_RANK", "PROPORTIONAL", "TOURNAMENT", "UNIFORM",
    "SelectionScheme", "select", "select_linear_rank", "select_proportional",
    "select_tournament", "select_uniform", "selection_probabilities",
    "__version__",
]
