from __future__ import annotations

import numpy as np
import pytest
from dataclasses import replace

from snakefs import FitnessWeights, mask_evaluator, normalize_min_max, split
from synthdata import small_fs_dataset, two_cluster_dataset


class ScriptedRng:
    """Stands in for a numpy Generator, feeding predetermined draws.

    random() pops scalars in order; random(n) pops n of them into an array;
    integers(...) pops from a separate integer tape. Lets operator tests pin
    the magnitude, sign, and index draws exactly.
    """

    def __init__(self, randoms=(), ints=()):
        self._randoms = list(randoms)
        self._ints = list(ints)

    def random(self, size=None):
        if size is None:
            return self._randoms.pop(0)
        count = int(size)
        return np.array([self._randoms.pop(0) for _ in range(count)])

    def integers(self, low, high=None, size=None):
        if size is None:
            return self._ints.pop(0)
        return np.array([self._ints.pop(0) for _ in range(int(size))], dtype=np.int64)


@pytest.fixture
def scripted_rng_factory():
    return ScriptedRng


@pytest.fixture(scope="session")
def cluster_split():
    """Normalized 70/30 split of the two-cluster set, for evaluation tests."""
    ds = two_cluster_dataset(per_cluster=20)
    parts = split(ds, 0.7, np.random.default_rng(99))
    return replace(
        parts,
        train=normalize_min_max(parts.train),
        test=normalize_min_max(parts.test, reference=parts.train),
    )


@pytest.fixture(scope="session")
def small_split():
    """Normalized split of the cheap 20-feature problem."""
    ds = small_fs_dataset()
    parts = split(ds, 0.7, np.random.default_rng(123))
    return replace(
        parts,
        train=normalize_min_max(parts.train),
        test=normalize_min_max(parts.test, reference=parts.train),
    )


@pytest.fixture
def small_evaluator(small_split):
    return mask_evaluator(small_split, FitnessWeights(), 5)


def pytest_terminal_summary(terminalreporter):
    # acceptance tests record one line per criterion; replay them after the
    # capture machinery has shut down so they always reach the terminal
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
