"""Core snake dynamics: schedules, movement operators, and the iteration step.

The population follows an annealed two-phase regime. Early on (low food
quantity) each group explores around targets chosen by a selection scheme.
Once food is plentiful the branch depends on temperature: hot snakes chase
the best solution found so far (by logarithmic spiral or by a direct
temperature-damped move), cold snakes either fight across groups or mate
within pairs, with the worst pair occasionally replaced by fresh snakes.

Every operator updates the continuous position only and clamps it back into
the box; masks and fitness are refreshed once per iteration after all moves.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .binary import TransferPolicy, binarize
from .population import Bounds, Snake, SnakePopulation, update_bests

EPS = 1e-12

# exploitation move used in the hot phase
EXPLOIT_SPIRAL = "spiral"
EXPLOIT_DIRECT = "direct"


@dataclass(frozen=True)
class SoParams:
    """Dynamics constants.

    k1 scales food quantity, k2 the exploration step, k3 the exploitation,
    fight, and mate steps. Thresholds gate the phase branches; spiral_b is
    the spiral pitch and spiral_cos_literal collapses the angular factor to
    its printed constant form. egg_hatch_prob gates worst-pair replacement
    after mating.
    """

    k1: float = 0.5
    k2: float = 0.05
    k3: float = 2.0
    q_threshold: float = 0.25
    temp_threshold: float = 0.6
    mode_threshold: float = 0.6
    spiral_b: float = 1.0
    spiral_cos_literal: bool = False
    egg_hatch_prob: float = 0.5

    def __post_init__(self):
        for name in ("k1", "k2", "k3"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        for name in ("q_threshold", "temp_threshold", "mode_threshold"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie in (0, 1)")
        if not 0.0 <= self.egg_hatch_prob <= 1.0:
            raise ValueError("egg_hatch_prob must lie in [0, 1]")
        if self.spiral_b <= 0:
            raise ValueError("spiral_b must be positive")


def temperature(c: int, max_iterations: int) -> float:
    """Cooling schedule exp(-c/C): 1 at the start, 1/e at the end."""
    _check_schedule_args(c, max_iterations)
    return math.exp(-c / max_iterations)


def food_quantity(c: int, max_iterations: int, k1: float = 0.5) -> float:
    """Food schedule k1 * exp((c - C)/C), rising from k1/e to k1."""
    _check_schedule_args(c, max_iterations)
    return k1 * math.exp((c - max_iterations) / max_iterations)


def spiral_range_low(c: int, max_iterations: int) -> float:
    """Lower end of the spiral parameter range: -1 at c=0, -2 at c=C-1."""
    if max_iterations <= 1:
        return -1.0
    return -1.0 - c / (max_iterations - 1)


def _check_schedule_args(c: int, max_iterations: int):
    if max_iterations < 1:
        raise ValueError("max_iterations must be >= 1")
    if not 0 <= c <= max_iterations:
        raise ValueError("iteration index out of range")


@dataclass(frozen=True)
class IterationState:
    """Schedule values for one iteration."""

    c: int
    max_iterations: int
    temperature: float
    quantity: float
    r_spiral: float

    @classmethod
    def compute(cls, c: int, max_iterations: int, params: SoParams) -> "IterationState":
        return cls(
            c=c,
            max_iterations=max_iterations,
            temperature=temperature(c, max_iterations),
            quantity=food_quantity(c, max_iterations, params.k1),
            r_spiral=spiral_range_low(c, max_iterations),
        )


def _pressure(target_fitness: float, own_fitness: float) -> float:
    # exp(-f_target / f_own) with a floor on the denominator; the exponent
    # is clamped into [-700, 0] so the factor stays in (0, 1] without overflow
    arg = -float(target_fitness) / max(float(own_fitness), EPS)
    arg = min(max(arg, -700.0), 0.0)
    return math.exp(arg)


def _signs(dim: int, rng: np.random.Generator) -> np.ndarray:
    return np.where(rng.random(dim) < 0.5, 1.0, -1.0)


def explore_update(
    snake: Snake,
    target: Snake,
    target_fitness: float,
    bounds: Bounds,
    k2: float,
    rng: np.random.Generator,
) -> Snake:
    """Jump near the target: target +/- k2 * AB * ((s_max - s_min) R + s_min).

    AB = exp(-f_target/f_self); step magnitude and sign are drawn per
    dimension (magnitude draw first, then the sign draw).
    """
    dim = snake.position.size
    ability = _pressure(target_fitness, snake.fitness)
    magnitudes = (bounds.s_max - bounds.s_min) * rng.random(dim) + bounds.s_min
    moved = target.position + _signs(dim, rng) * k2 * ability * magnitudes
    out = snake.copy()
    out.position = bounds.clamp(moved)
    return out


def spiral_update(
    snake: Snake,
    food: Snake,
    b: float,
    r_low: float,
    rng: np.random.Generator,
    bounds: Bounds,
    cos_literal: bool = False,
) -> Snake:
    """Logarithmic spiral around the food position.

    Per dimension, with D = |position - food| and t ~ U[r_low, 1]:
    new = D * exp(b t) * cos(2 pi t) + food. A snake sitting on the food
    stays exactly there (D = 0). cos_literal freezes the angular factor at
    cos(2 pi) = 1.
    """
    dim = snake.position.size
    t = r_low + (1.0 - r_low) * rng.random(dim)
    distance = np.abs(snake.position - food.position)
    radial = distance * np.exp(b * t)
    if cos_literal:
        moved = radial + food.position
    else:
        moved = radial * np.cos(2.0 * np.pi * t) + food.position
    out = snake.copy()
    out.position = bounds.clamp(moved)
    return out


def food_approach_update(
    snake: Snake,
    food: Snake,
    temp: float,
    k3: float,
    bounds: Bounds,
    rng: np.random.Generator,
) -> Snake:
    """Direct temperature-damped move: food +/- k3 * T * R * (food - position)."""
    dim = snake.position.size
    r = rng.random(dim)
    moved = food.position + _signs(dim, rng) * k3 * temp * r * (food.position - snake.position)
    out = snake.copy()
    out.position = bounds.clamp(moved)
    return out


def fight_update(
    snake: Snake,
    opposite_best: Snake,
    opposite_best_fitness: float,
    k3: float,
    bounds: Bounds,
    rng: np.random.Generator,
) -> Snake:
    """Move against the best of the opposite group, scaled by fighting ability."""
    dim = snake.position.size
    ability = _pressure(opposite_best_fitness, snake.fitness)
    r = rng.random(dim)
    moved = snake.position + _signs(dim, rng) * k3 * ability * r * (opposite_best.position - snake.position)
    out = snake.copy()
    out.position = bounds.clamp(moved)
    return out


def mate_update(
    snake: Snake,
    partner: Snake,
    partner_fitness: float,
    quantity: float,
    k3: float,
    bounds: Bounds,
    rng: np.random.Generator,
) -> Snake:
    """Move toward the food-scaled partner, scaled by mating ability."""
    dim = snake.position.size
    ability = _pressure(partner_fitness, snake.fitness)
    r = rng.random(dim)
    moved = snake.position + _signs(dim, rng) * k3 * ability * r * (quantity * partner.position - snake.position)
    out = snake.copy()
    out.position = bounds.clamp(moved)
    return out


def replace_worst(
    pop: SnakePopulation,
    bounds: Bounds,
    egg_hatch_prob: float,
    rng: np.random.Generator,
    policy: TransferPolicy | None = None,
) -> SnakePopulation:
    """With probability egg_hatch_prob, re-seed the worst male and female.

    One hatch draw gates both replacements. Fresh snakes get a uniform
    position and a transfer-sampled mask; their fitness is set to +inf and
    stays stale until the next evaluation pass, so they can never displace
    an archived best by accident.
    """
    if not 0.0 <= egg_hatch_prob <= 1.0:
        raise ValueError("egg_hatch_prob must lie in [0, 1]")
    if rng.random() >= egg_hatch_prob:
        return pop
    for group in (pop.males, pop.females):
        # max() keeps the first maximum, so fitness ties resolve to the lower index
        worst = max(range(len(group)), key=lambda i: group[i].fitness)
        sex = group[worst].sex
        position = bounds.sample(group[worst].position.size, rng)
        mask = binarize(position, policy, rng)
        group[worst] = Snake(position, mask, float("inf"), sex)
    return pop


def step(
    pop: SnakePopulation,
    state: IterationState,
    params: SoParams,
    scheme,
    evaluator,
    bounds: Bounds,
    policy: TransferPolicy | None,
    rng: np.random.Generator,
    exploit: str = EXPLOIT_SPIRAL,
) -> tuple[SnakePopulation, IterationState]:
    """Advance the population one iteration.

    Exactly one branch runs, on the state captured at iteration start:
    low food -> per-group exploration around scheme-selected targets;
    hot -> exploitation toward the global best (spiral or direct);
    cold -> a single mode draw picks fight (across groups) or mate
    (index-paired), mating being followed by the worst-pair replacement.
    Afterwards every snake is re-binarized, re-evaluated, and the elitist
    archive updated. The input population is left untouched.
    """
    from .selection import select  # local import keeps module deps acyclic

    if exploit not in (EXPLOIT_SPIRAL, EXPLOIT_DIRECT):
        raise ValueError(f"unknown exploit kind {exploit!r}")
    males, females = pop.males, pop.females
    new_males: list[Snake] = []
    new_females: list[Snake] = []
    mated = False

    if state.quantity < params.q_threshold:
        for group, out in ((males, new_males), (females, new_females)):
            fitnesses = [s.fitness for s in group]
            for snake in group:
                t_idx = select(fitnesses, scheme, rng)
                out.append(explore_update(snake, group[t_idx], fitnesses[t_idx], bounds, params.k2, rng))
    elif state.temperature > params.temp_threshold:
        food = pop.global_best
        for group, out in ((males, new_males), (females, new_females)):
            for snake in group:
                if exploit == EXPLOIT_SPIRAL:
                    out.append(
                        spiral_update(
                            snake, food, params.spiral_b, state.r_spiral, rng, bounds,
                            cos_literal=params.spiral_cos_literal,
                        )
                    )
                else:
                    out.append(food_approach_update(snake, food, state.temperature, params.k3, bounds, rng))
    else:
        mode_draw = rng.random()
        if mode_draw > params.mode_threshold:
            for snake in males:
                new_males.append(fight_update(snake, pop.best_female, pop.best_female.fitness, params.k3, bounds, rng))
            for snake in females:
                new_females.append(fight_update(snake, pop.best_male, pop.best_male.fitness, params.k3, bounds, rng))
        else:
            mated = True
            for i, snake in enumerate(males):
                partner = females[i % len(females)]
                new_males.append(mate_update(snake, partner, partner.fitness, state.quantity, params.k3, bounds, rng))
            for i, snake in enumerate(females):
                partner = males[i % len(males)]
                new_females.append(mate_update(snake, partner, partner.fitness, state.quantity, params.k3, bounds, rng))

    out_pop = SnakePopulation(
        males=new_males,
        females=new_females,
        best_male=pop.best_male.copy(),
        best_female=pop.best_female.copy(),
        global_best=pop.global_best.copy(),
    )
    if mated:
        out_pop = replace_worst(out_pop, bounds, params.egg_hatch_prob, rng, policy)

    for snake in out_pop.males + out_pop.females:
        snake.mask = binarize(snake.position, policy, rng)
        snake.fitness = float(evaluator(snake.mask).fitness)
    update_bests(out_pop)
    next_state = IterationState.compute(state.c + 1, state.max_iterations, params)
    return out_pop, next_state
