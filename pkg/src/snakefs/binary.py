"""Continuous-to-binary transfer layer.

Positions evolve in a continuous box; the feature mask is re-sampled from them
through a sigmoid transfer function. An all-zero mask is repaired by switching
one random bit on, so downstream evaluation always sees at least one feature.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Transfer threshold modes. "standard" keeps the usual monotone rule
# (higher position -> more likely selected); "paper-literal" inverts it.
STANDARD = "standard"
PAPER_LITERAL = "paper-literal"

_MODES = (STANDARD, PAPER_LITERAL)


@dataclass(frozen=True)
class TransferPolicy:
    """How continuous positions turn into mask bits."""

    mode: str = STANDARD

    def __post_init__(self):
        if self.mode not in _MODES:
            raise ValueError(f"unknown transfer mode {self.mode!r}; expected one of {_MODES}")


def sigmoid(x):
    """Numerically stable logistic function; scalar in, float out."""
    arr = np.asarray(x, dtype=float)
    out = np.empty_like(arr)
    pos = arr >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-arr[pos]))
    ex = np.exp(arr[~pos])
    out[~pos] = ex / (1.0 + ex)
    if np.ndim(x) == 0:
        return float(out)
    return out


def binarize(position, policy: TransferPolicy | None = None, rng: np.random.Generator | None = None):
    """Sample a 0/1 mask from a continuous position vector.

    Each bit is an independent draw against sigmoid(position): under the
    standard mode bit = 1 when the draw falls below the transfer value,
    under paper-literal mode the comparison is inverted. A mask that comes
    out all-zero gets exactly one uniformly chosen bit set.
    """
    if rng is None:
        raise ValueError("binarize needs an explicit rng")
    if policy is None:
        policy = TransferPolicy()
    pos = np.asarray(position, dtype=float)
    if pos.ndim != 1 or pos.size == 0:
        raise ValueError("position must be a non-empty 1-d vector")
    if not np.all(np.isfinite(pos)):
        raise ValueError("position must be finite")
    transfer = sigmoid(pos)
    draws = rng.random(pos.size)
    if policy.mode == STANDARD:
        bits = draws < transfer
    else:
        bits = draws >= transfer
    mask = bits.astype(np.int8)
    if not mask.any():
        mask[int(rng.integers(pos.size))] = 1
    return mask
