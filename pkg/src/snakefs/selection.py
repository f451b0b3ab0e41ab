"""Target-selection schemes for the exploration phase.

All schemes pick an index into a group of candidates by fitness, lower
fitness being better. Ties in fitness are resolved toward the lower index,
which makes every scheme a strict total order and keeps the closed-form
win probabilities exact. `selection_probabilities` returns that closed form
so empirical draw frequencies can be checked against theory.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EPS = 1e-12

UNIFORM = "uniform"
TOURNAMENT = "tournament"
PROPORTIONAL = "proportional"
LINEAR_RANK = "linear-rank"

KINDS = (UNIFORM, TOURNAMENT, PROPORTIONAL, LINEAR_RANK)


@dataclass(frozen=True)
class SelectionScheme:
    """Configured selection rule.

    tournament_size applies to the tournament kind only (candidates are drawn
    with replacement, so sizes above the group size stay well defined);
    eta_plus is the linear-rank selection pressure, 1 <= eta_plus <= 2, with
    the complementary eta_minus = 2 - eta_plus.
    """

    kind: str = UNIFORM
    tournament_size: int = 3
    eta_plus: float = 1.5

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown selection kind {self.kind!r}; expected one of {KINDS}")
        if self.tournament_size < 2:
            raise ValueError("tournament_size must be >= 2")
        if not 1.0 <= self.eta_plus <= 2.0:
            raise ValueError("eta_plus must lie in [1, 2]")


def select_uniform(n: int, rng: np.random.Generator) -> int:
    """Uniform random index in [0, n)."""
    if n < 1:
        raise ValueError("group must be non-empty")
    return int(rng.integers(n))


def select_tournament(fitnesses, o: int, rng: np.random.Generator) -> int:
    """Best of o candidates drawn uniformly with replacement.

    With distinct fitnesses the winner probability of the rank-i candidate
    (rank 1 = best) is ((N-i+1)^o - (N-i)^o) / N^o.
    """
    n = len(fitnesses)
    if n < 1:
        raise ValueError("group must be non-empty")
    if o < 2:
        raise ValueError("tournament size must be >= 2")
    draws = rng.integers(0, n, size=o)
    best = int(draws[0])
    best_f = fitnesses[best]
    for j in draws[1:]:
        j = int(j)
        f = fitnesses[j]
        if f < best_f or (f == best_f and j < best):
            best, best_f = j, f
    return best


def select_proportional(fitnesses, rng: np.random.Generator) -> int:
    """Roulette wheel over inverted fitness (minimization).

    Weights are 1/max(f, EPS), so near-zero fitness dominates the wheel
    instead of crashing it; weights normalize to a proper distribution.
    """
    n = len(fitnesses)
    if n < 1:
        raise ValueError("group must be non-empty")
    weights = [1.0 / max(float(f), EPS) for f in fitnesses]
    total = sum(weights)
    r = rng.random() * total
    acc = 0.0
    for i, w in enumerate(weights):
        acc += w
        if r < acc:
            return i
    return n - 1


def select_linear_rank(fitnesses, eta_plus: float, rng: np.random.Generator) -> int:
    """Roulette wheel over rank, best rank weighted eta_plus.

    Rank r (1 = best) gets probability (eta+ - (eta+ - eta-)(r-1)/(N-1)) / N
    with eta- = 2 - eta+, which sums to 1 and gives the best candidate
    probability eta+/N. eta_plus = 1 degenerates to uniform.
    """
    if not 1.0 <= eta_plus <= 2.0:
        raise ValueError("eta_plus must lie in [1, 2]")
    n = len(fitnesses)
    if n < 1:
        raise ValueError("group must be non-empty")
    if n == 1:
        return 0
    order = sorted(range(n), key=lambda i: (fitnesses[i], i))
    eta_minus = 2.0 - eta_plus
    spread = eta_plus - eta_minus
    r = rng.random()
    acc = 0.0
    for rank, idx in enumerate(order):
        acc += (eta_plus - spread * rank / (n - 1)) / n
        if r < acc:
            return idx
    return order[-1]


def select(fitnesses, scheme: SelectionScheme, rng: np.random.Generator) -> int:
    """Dispatch one draw through the configured scheme."""
    if scheme.kind == UNIFORM:
        return select_uniform(len(fitnesses), rng)
    if scheme.kind == TOURNAMENT:
        return select_tournament(fitnesses, scheme.tournament_size, rng)
    if scheme.kind == PROPORTIONAL:
        return select_proportional(fitnesses, rng)
    return select_linear_rank(fitnesses, scheme.eta_plus, rng)


def _rank_order(fitnesses) -> np.ndarray:
    # stable sort = fitness ties resolved toward the lower index
    return np.argsort(np.asarray(fitnesses, dtype=float), kind="stable")


def selection_probabilities(fitnesses, scheme: SelectionScheme) -> np.ndarray:
    """Exact per-index win probability under the scheme.

    The result is a proper distribution over the candidate indices and is
    what empirical draw frequencies converge to.
    """
    n = len(fitnesses)
    if n < 1:
        raise ValueError("group must be non-empty")
    probs = np.zeros(n, dtype=float)
    if scheme.kind == UNIFORM:
        probs[:] = 1.0 / n
        return probs
    if scheme.kind == PROPORTIONAL:
        weights = np.array([1.0 / max(float(f), EPS) for f in fitnesses])
        return weights / weights.sum()
    order = _rank_order(fitnesses)
    if scheme.kind == TOURNAMENT:
        o = scheme.tournament_size
        denom = n**o  # python ints: exact for any n, o
        for rank, idx in enumerate(order):
            num = (n - rank) ** o - (n - rank - 1) ** o
            probs[idx] = num / denom
        return probs
    eta_plus = scheme.eta_plus
    eta_minus = 2.0 - eta_plus
    if n == 1:
        probs[order[0]] = 1.0
        return probs
    for rank, idx in enumerate(order):
        probs[idx] = (eta_plus - (eta_plus - eta_minus) * rank / (n - 1)) / n
    return probs
