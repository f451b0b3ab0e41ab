import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from snakefs import PAPER_LITERAL, STANDARD, TransferPolicy, binarize, sigmoid


def test_sigmoid_reference_values():
    assert sigmoid(0.0) == pytest.approx(0.5, abs=0)
    assert sigmoid(1.0) == pytest.approx(0.7310585786300049, abs=1e-15)
    assert sigmoid(-1.0) == pytest.approx(1.0 - 0.7310585786300049, abs=1e-15)


def test_sigmoid_extreme_arguments_saturate_without_overflow():
    assert sigmoid(800.0) == 1.0
    assert sigmoid(-800.0) == 0.0
    arr = sigmoid(np.array([-1000.0, 0.0, 1000.0]))
    assert np.all(arr >= 0.0) and np.all(arr <= 1.0)


def test_sigmoid_is_monotone_and_symmetric():
    xs = np.linspace(-20, 20, 201)
    ys = sigmoid(xs)
    assert np.all(np.diff(ys) > 0)
    assert np.allclose(ys + sigmoid(-xs), 1.0, atol=1e-12)


def test_binarize_deterministic_saturated_positions():
    rng = np.random.default_rng(0)
    mask = binarize(np.array([40.0, -40.0, 40.0]), rng=rng)
    assert mask.tolist() == [1, 0, 1]
    rng = np.random.default_rng(0)
    literal = binarize(np.array([40.0, -40.0, 40.0]), TransferPolicy(mode=PAPER_LITERAL), rng)
    assert literal.tolist() == [0, 1, 0]


def test_binarize_modes_are_complementary_before_repair():
    # identical rng streams see identical threshold draws, so the two modes
    # flip every bit; saturated positions keep both masks off the repair path
    position = np.array([9.0, -9.0, 9.0, -9.0, 9.0])
    std = binarize(position, TransferPolicy(STANDARD), np.random.default_rng(7))
    lit = binarize(position, TransferPolicy(PAPER_LITERAL), np.random.default_rng(7))
    assert np.array_equal(std + lit, np.ones(5, dtype=np.int8))


def test_binarize_repairs_all_zero_mask():
    rng = np.random.default_rng(3)
    for _ in range(50):
        mask = binarize(np.full(6, -50.0), rng=rng)
        assert mask.sum() == 1


def test_binarize_empirical_rate_tracks_sigmoid():
    rng = np.random.default_rng(42)
    for x in (-1.0, 0.3, 1.5):
        mask = binarize(np.full(100_000, x), rng=rng)
        assert mask.mean() == pytest.approx(sigmoid(x), abs=0.01)


def test_binarize_rejects_bad_input():
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        binarize(np.array([np.nan, 0.0]), rng=rng)
    with pytest.raises(ValueError):
        binarize(np.array([]), rng=rng)
    with pytest.raises(ValueError):
        binarize(np.zeros((2, 2)), rng=rng)
    with pytest.raises(ValueError):
        binarize(np.zeros(3), rng=None)
    with pytest.raises(ValueError):
        TransferPolicy(mode="bogus")


@settings(max_examples=60, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    dim=st.integers(1, 30),
    mode=st.sampled_from([STANDARD, PAPER_LITERAL]),
)
def test_binarize_always_selects_something(seed, dim, mode):
    rng = np.random.default_rng(seed)
    position = rng.normal(scale=5.0, size=dim)
    mask = binarize(position, TransferPolicy(mode=mode), rng)
    assert mask.dtype == np.int8
    assert mask.shape == (dim,)
    assert set(np.unique(mask)) <= {0, 1}
    assert mask.sum() >= 1
