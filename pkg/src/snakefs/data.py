"""Dataset ingestion, normalization, and stratified splitting.

CSV files are expected rectangular and fully numeric apart from the label
column. Labels (numeric or not) are remapped to contiguous ids 0..K-1 in a
deterministic order: numeric ascending when every raw label parses as a
number, lexical ascending otherwise. For binary data that makes class id 1
the larger / lexically later raw label, which downstream metrics treat as
the positive class.
"""
from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field

import numpy as np


@dataclass
class Dataset:
    """Numeric feature matrix with integer class labels.

    label_names[i] is the raw label string mapped to class id i;
    feature i of an instance sits in features[row, i].
    """

    features: np.ndarray
    labels: np.ndarray
    feature_names: list[str] = field(default_factory=list)
    label_names: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=float)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.features.ndim != 2:
            raise ValueError("features must be a 2-d matrix")
        if self.labels.shape != (self.features.shape[0],):
            raise ValueError("labels must align with feature rows")
        if not self.feature_names:
            self.feature_names = [f"f{i}" for i in range(self.features.shape[1])]
        if len(self.feature_names) != self.features.shape[1]:
            raise ValueError("feature_names must match the feature count")

    @property
    def instance_count(self) -> int:
        return self.features.shape[0]

    @property
    def feature_count(self) -> int:
        return self.features.shape[1]

    @property
    def class_count(self) -> int:
        return int(self.labels.max()) + 1 if self.labels.size else 0


@dataclass
class SplitDataset:
    train: Dataset
    test: Dataset
    train_fraction: float


def load_csv(path, header: bool = True, label_column: int = -1) -> Dataset:
    """Parse a delimited dataset file.

    Rejects ragged rows, unparseable feature cells (naming row and column),
    empty files, and single-class data. Row numbers in messages are 1-based
    file lines, header included.
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = [row for row in csv.reader(fh)]
    rows = [row for row in rows if row]  # drop completely blank lines
    if not rows:
        raise ValueError(f"{path}: file contains no data")
    width = len(rows[0])
    if width < 2:
        raise ValueError(f"{path}: need at least one feature column plus a label column")
    for lineno, row in enumerate(rows, start=1):
        if len(row) != width:
            raise ValueError(f"{path}: row {lineno} has {len(row)} cells, expected {width}")
    label_idx = label_column if label_column >= 0 else width + label_column
    if not 0 <= label_idx < width:
        raise ValueError(f"{path}: label column {label_column} out of range for {width} columns")

    names: list[str] = []
    if header:
        names = [rows[0][i] for i in range(width) if i != label_idx]
        data_rows = rows[1:]
        first_line = 2
    else:
        data_rows = rows
        first_line = 1
    if not data_rows:
        raise ValueError(f"{path}: no data rows after the header")

    feature_cols = [i for i in range(width) if i != label_idx]
    features = np.empty((len(data_rows), len(feature_cols)), dtype=float)
    raw_labels: list[str] = []
    for r, row in enumerate(data_rows):
        for out_c, c in enumerate(feature_cols):
            cell = row[c].strip()
            try:
                features[r, out_c] = float(cell)
            except ValueError:
                lineno = r + first_line
                raise ValueError(
                    f"{path}: row {lineno}, column {c + 1}: cannot parse {cell!r} as a number"
                ) from None
        raw_labels.append(row[label_idx].strip())

    label_names = _ordered_labels(raw_labels)
    if len(label_names) < 2:
        raise ValueError(f"{path}: dataset has a single class {label_names[0]!r}")
    mapping = {name: i for i, name in enumerate(label_names)}
    labels = np.array([mapping[raw] for raw in raw_labels], dtype=np.int64)
    if not names:
        names = [f"f{i}" for i in range(len(feature_cols))]
    return Dataset(features=features, labels=labels, feature_names=names, label_names=label_names)


def _ordered_labels(raw_labels: list[str]) -> list[str]:
    distinct = sorted(set(raw_labels))
    try:
        return sorted(distinct, key=float)
    except ValueError:
        return distinct


def normalize_min_max(ds: Dataset, reference: Dataset | None = None) -> Dataset:
    """Affinely map each feature column into [0, 1].

    Column minima and ranges come from `reference` when given (fit on train,
    apply to test), otherwise from `ds` itself. Constant reference columns
    map to 0, and values outside the reference range clamp to [0, 1].
    """
    ref = reference if reference is not None else ds
    if ref.feature_count != ds.feature_count:
        raise ValueError("reference feature count does not match")
    mins = ref.features.min(axis=0)
    ranges = ref.features.max(axis=0) - mins
    scaled = np.zeros_like(ds.features)
    nonconst = ranges > 0
    scaled[:, nonconst] = (ds.features[:, nonconst] - mins[nonconst]) / ranges[nonconst]
    scaled = np.clip(scaled, 0.0, 1.0)
    return Dataset(
        features=scaled,
        labels=ds.labels.copy(),
        feature_names=list(ds.feature_names),
        label_names=list(ds.label_names),
    )


def split(ds: Dataset, train_fraction: float, rng: np.random.Generator) -> SplitDataset:
    """Stratified random train/test split.

    Each class is shuffled and cut at round(train_fraction * count), clamped
    so both sides stay populated. Any class with fewer than 2 instances
    drops the whole split back to unstratified (with a warning).
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train_fraction must lie strictly between 0 and 1")
    n = ds.instance_count
    if n < 2:
        raise ValueError("need at least 2 instances to split")
    class_ids = np.unique(ds.labels)
    counts = {int(c): int((ds.labels == c).sum()) for c in class_ids}
    train_idx: list[np.ndarray] = []
    test_idx: list[np.ndarray] = []
    if any(count < 2 for count in counts.values()):
        warnings.warn("a class has fewer than 2 instances; falling back to an unstratified split")
        perm = rng.permutation(n)
        cut = _clamped_cut(train_fraction, n)
        train_idx.append(perm[:cut])
        test_idx.append(perm[cut:])
    else:
        for c in class_ids:
            members = np.flatnonzero(ds.labels == c)
            perm = rng.permutation(members)
            cut = _clamped_cut(train_fraction, members.size)
            train_idx.append(perm[:cut])
            test_idx.append(perm[cut:])
    train_rows = np.sort(np.concatenate(train_idx))
    test_rows = np.sort(np.concatenate(test_idx))
    return SplitDataset(
        train=_take(ds, train_rows),
        test=_take(ds, test_rows),
        train_fraction=train_fraction,
    )


def _clamped_cut(fraction: float, count: int) -> int:
    cut = int(round(fraction * count))
    return min(max(cut, 1), count - 1)


def _take(ds: Dataset, rows: np.ndarray) -> Dataset:
    return Dataset(
        features=ds.features[rows].copy(),
        labels=ds.labels[rows].copy(),
        feature_names=list(ds.feature_names),
        label_names=list(ds.label_names),
    )
