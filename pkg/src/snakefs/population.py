"""Population state: snakes split into male and female groups with elitist bests."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .binary import TransferPolicy, binarize

MALE = "male"
FEMALE = "female"


@dataclass(frozen=True)
class Bounds:
    """Inclusive box limits shared by every dimension."""

    s_min: float = 0.0
    s_max: float = 1.0

    def __post_init__(self):
        if not self.s_min < self.s_max:
            raise ValueError("bounds require s_min < s_max")

    def clamp(self, position: np.ndarray) -> np.ndarray:
        return np.clip(position, self.s_min, self.s_max)

    def sample(self, dim: int, rng: np.random.Generator) -> np.ndarray:
        return self.s_min + rng.random(dim) * (self.s_max - self.s_min)


@dataclass
class Snake:
    position: np.ndarray
    mask: np.ndarray
    fitness: float
    sex: str

    def copy(self) -> "Snake":
        return Snake(self.position.copy(), self.mask.copy(), self.fitness, self.sex)


@dataclass
class SnakePopulation:
    males: list[Snake]
    females: list[Snake]
    best_male: Snake = field(default=None)  # type: ignore[assignment]
    best_female: Snake = field(default=None)  # type: ignore[assignment]
    global_best: Snake = field(default=None)  # type: ignore[assignment]

    def all_snakes(self) -> list[Snake]:
        return self.males + self.females


def _group_min(snakes: list[Snake]) -> Snake:
    # min() keeps the first minimum, so fitness ties resolve to the lower index
    return min(snakes, key=lambda s: s.fitness)


def init_population(
    n: int,
    dim: int,
    bounds: Bounds,
    rng: np.random.Generator,
    policy: TransferPolicy | None = None,
    evaluator=None,
) -> SnakePopulation:
    """Uniform random population of n snakes over a dim-dimensional box.

    The first floor(n/2) snakes are male, the remainder female, so an odd
    count leaves the extra snake in the female group. Masks come from the
    transfer layer and fitness from the supplied evaluator (a callable
    mask -> result with a .fitness attribute).
    """
    if n < 4:
        raise ValueError("population needs at least 4 snakes (two per group)")
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    if evaluator is None:
        raise ValueError("init_population needs an evaluator")
    n_male = n // 2
    males: list[Snake] = []
    females: list[Snake] = []
    for i in range(n):
        position = bounds.sample(dim, rng)
        mask = binarize(position, policy, rng)
        fitness = float(evaluator(mask).fitness)
        sex = MALE if i < n_male else FEMALE
        (males if sex == MALE else females).append(Snake(position, mask, fitness, sex))
    pop = SnakePopulation(males=males, females=females)
    pop.best_male = _group_min(males).copy()
    pop.best_female = _group_min(females).copy()
    champion = pop.best_male if pop.best_male.fitness <= pop.best_female.fitness else pop.best_female
    pop.global_best = champion.copy()
    return pop


def update_bests(pop: SnakePopulation) -> SnakePopulation:
    """Refresh the elitist archive from the current groups.

    A challenger replaces an archived best only on strictly lower fitness,
    so the archive never regresses and ties keep the incumbent.
    """
    for group, attr in ((pop.males, "best_male"), (pop.females, "best_female")):
        candidate = _group_min(group)
        incumbent = getattr(pop, attr)
        if incumbent is None or candidate.fitness < incumbent.fitness:
            setattr(pop, attr, candidate.copy())
    challenger = pop.best_male if pop.best_male.fitness <= pop.best_female.fitness else pop.best_female
    if pop.global_best is None or challenger.fitness < pop.global_best.fitness:
        pop.global_best = challenger.copy()
    return pop
