import numpy as np
import pytest

from snakefs import FEMALE, MALE, Bounds, Snake, SnakePopulation, init_population, update_bests


class StubEval:
    """Fitness = fraction of selected features; deterministic and mask-only."""

    class Result:
        def __init__(self, fitness):
            self.fitness = fitness

    def __call__(self, mask):
        mask = np.asarray(mask)
        return self.Result(float(mask.sum()) / mask.size)


def make_snake(pos, fitness, sex=MALE):
    pos = np.asarray(pos, dtype=float)
    mask = np.ones(pos.size, dtype=np.int8)
    return Snake(pos, mask, fitness, sex)


def test_bounds_validation_and_clamp():
    with pytest.raises(ValueError):
        Bounds(1.0, 1.0)
    b = Bounds(0.0, 1.0)
    assert b.clamp(np.array([-0.5, 0.3, 2.0])).tolist() == [0.0, 0.3, 1.0]


def test_even_population_splits_in_half():
    pop = init_population(10, 4, Bounds(), np.random.default_rng(0), evaluator=StubEval())
    assert len(pop.males) == 5 and len(pop.females) == 5
    assert all(s.sex == MALE for s in pop.males)
    assert all(s.sex == FEMALE for s in pop.females)


def test_odd_population_gives_extra_snake_to_females():
    pop = init_population(7, 3, Bounds(), np.random.default_rng(1), evaluator=StubEval())
    assert len(pop.males) == 3 and len(pop.females) == 4


def test_init_respects_bounds_and_masks_nonempty():
    bounds = Bounds(-2.0, 3.0)
    pop = init_population(12, 6, bounds, np.random.default_rng(2), evaluator=StubEval())
    for snake in pop.all_snakes():
        assert np.all(snake.position >= bounds.s_min)
        assert np.all(snake.position <= bounds.s_max)
        assert snake.mask.sum() >= 1
        assert snake.fitness == pytest.approx(snake.mask.sum() / 6)


def test_init_populates_bests_consistently():
    pop = init_population(9, 5, Bounds(), np.random.default_rng(3), evaluator=StubEval())
    assert pop.best_male.fitness == min(s.fitness for s in pop.males)
    assert pop.best_female.fitness == min(s.fitness for s in pop.females)
    assert pop.global_best.fitness == min(pop.best_male.fitness, pop.best_female.fitness)


def test_init_is_deterministic_per_seed():
    a = init_population(8, 4, Bounds(), np.random.default_rng(11), evaluator=StubEval())
    b = init_population(8, 4, Bounds(), np.random.default_rng(11), evaluator=StubEval())
    for s1, s2 in zip(a.all_snakes(), b.all_snakes()):
        assert np.array_equal(s1.position, s2.position)
        assert np.array_equal(s1.mask, s2.mask)
        assert s1.fitness == s2.fitness


def test_init_validation():
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        init_population(3, 4, Bounds(), rng, evaluator=StubEval())
    with pytest.raises(ValueError):
        init_population(6, 0, Bounds(), rng, evaluator=StubEval())
    with pytest.raises(ValueError):
        init_population(6, 4, Bounds(), rng)


def test_update_bests_takes_strict_improvements():
    males = [make_snake([0.1], 0.8), make_snake([0.2], 0.3)]
    females = [make_snake([0.3], 0.9, FEMALE), make_snake([0.4], 0.5, FEMALE)]
    pop = SnakePopulation(males, females,
                          best_male=make_snake([9.0], 0.6),
                          best_female=make_snake([9.0], 0.4, FEMALE),
                          global_best=make_snake([9.0], 0.4, FEMALE))
    update_bests(pop)
    assert pop.best_male.fitness == 0.3
    assert pop.best_male.position[0] == 0.2
    assert pop.best_female.fitness == 0.4  # incumbent better than current group
    assert pop.global_best.fitness == 0.3


def test_update_bests_tie_keeps_incumbent():
    incumbent = make_snake([7.0], 0.5)
    males = [make_snake([0.1], 0.5)]  # ties the archive, must not displace it
    females = [make_snake([0.2], 0.9, FEMALE)]
    pop = SnakePopulation(males, females,
                          best_male=incumbent,
                          best_female=make_snake([8.0], 0.9, FEMALE),
                          global_best=make_snake([7.0], 0.5))
    update_bests(pop)
    assert pop.best_male.position[0] == 7.0
    assert pop.global_best.position[0] == 7.0


def test_update_bests_archive_is_a_copy():
    males = [make_snake([0.1], 0.2)]
    females = [make_snake([0.2], 0.9, FEMALE)]
    pop = SnakePopulation(males, females,
                          best_male=make_snake([9.0], 0.8),
                          best_female=make_snake([9.0], 0.85, FEMALE),
                          global_best=make_snake([9.0], 0.8))
    update_bests(pop)
    males[0].position[0] = 123.0
    males[0].fitness = 0.0
    assert pop.best_male.position[0] == 0.1
    assert pop.best_male.fitness == 0.2


def test_group_tie_prefers_lower_index():
    males = [make_snake([1.0], 0.5), make_snake([2.0], 0.5)]
    females = [make_snake([3.0], 0.9, FEMALE)]
    pop = SnakePopulation(males, females,
                          best_male=make_snake([9.0], 0.7),
                          best_female=make_snake([9.0], 0.95, FEMALE),
                          global_best=make_snake([9.0], 0.7))
    update_bests(pop)
    assert pop.best_male.position[0] == 1.0
