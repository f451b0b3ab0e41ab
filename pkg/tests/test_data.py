import numpy as np
import pytest

from snakefs import Dataset, load_csv, normalize_min_max, split
from synthdata import small_fs_dataset, write_dataset_csv


def write_text(tmp_path, body, name="data.csv"):
    path = tmp_path / name
    path.write_text(body, encoding="utf-8")
    return path


# ---- loading --------------------------------------------------------------


def test_load_with_header_and_trailing_label(tmp_path):
    path = write_text(tmp_path, "a,b,label\n1,2,yes\n3,4,no\n0.5,1.5,yes\n")
    ds = load_csv(path)
    assert ds.instance_count == 3
    assert ds.feature_count == 2
    assert ds.class_count == 2
    assert ds.feature_names == ["a", "b"]
    assert ds.label_names == ["no", "yes"]
    assert ds.features.dtype == np.float64
    assert np.array_equal(ds.features, [[1, 2], [3, 4], [0.5, 1.5]])
    assert np.array_equal(ds.labels, [1, 0, 1])


def test_load_without_header_generates_names(tmp_path):
    path = write_text(tmp_path, "1,2,x\n3,4,y\n")
    ds = load_csv(path, header=False)
    assert ds.feature_names == ["f0", "f1"]
    assert ds.label_names == ["x", "y"]


def test_label_column_zero(tmp_path):
    path = write_text(tmp_path, "label,a,b\nyes,1,2\nno,3,4\n")
    ds = load_csv(path, label_column=0)
    assert ds.feature_names == ["a", "b"]
    assert np.array_equal(ds.features, [[1, 2], [3, 4]])
    assert np.array_equal(ds.labels, [1, 0])


def test_negative_label_column_counts_from_the_right(tmp_path):
    body = "a,label,b\n1,yes,2\n3,no,4\n"
    by_neg = load_csv(write_text(tmp_path, body, "n.csv"), label_column=-2)
    by_pos = load_csv(write_text(tmp_path, body, "p.csv"), label_column=1)
    assert np.array_equal(by_neg.features, by_pos.features)
    assert by_neg.label_names == by_pos.label_names


def test_numeric_labels_sort_numerically(tmp_path):
    path = write_text(tmp_path, "a,label\n1,10\n2,2\n3,10\n")
    ds = load_csv(path)
    assert ds.label_names == ["2", "10"]  # lexical order would flip these
    assert np.array_equal(ds.labels, [1, 0, 1])


def test_text_labels_sort_lexically(tmp_path):
    path = write_text(tmp_path, "a,label\n1,madrid\n2,ankara\n3,oslo\n")
    ds = load_csv(path)
    assert ds.label_names == ["ankara", "madrid", "oslo"]
    assert np.array_equal(ds.labels, [1, 0, 2])


def test_blank_lines_are_ignored(tmp_path):
    path = write_text(tmp_path, "a,label\n\n1,x\n\n2,y\n\n")
    ds = load_csv(path)
    assert ds.instance_count == 2


def test_ragged_row_is_reported_with_its_line(tmp_path):
    path = write_text(tmp_path, "a,b,label\n1,2,x\n3,4\n")
    with pytest.raises(ValueError) as err:
        load_csv(path)
    assert "row 3 has 2 cells, expected 3" in str(err.value)


def test_bad_cell_names_row_and_column(tmp_path):
    path = write_text(tmp_path, "a,b,label\n1,2,x\n1,oops,y\n")
    with pytest.raises(ValueError) as err:
        load_csv(path)
    assert "row 3, column 2: cannot parse 'oops' as a number" in str(err.value)


def test_empty_file_is_rejected(tmp_path):
    path = write_text(tmp_path, "")
    with pytest.raises(ValueError, match="no data"):
        load_csv(path)


def test_header_only_file_is_rejected(tmp_path):
    path = write_text(tmp_path, "a,b,label\n")
    with pytest.raises(ValueError, match="no data rows"):
        load_csv(path)


def test_single_class_is_rejected(tmp_path):
    path = write_text(tmp_path, "a,label\n1,x\n2,x\n")
    with pytest.raises(ValueError, match="single class"):
        load_csv(path)


def test_label_column_out_of_range(tmp_path):
    path = write_text(tmp_path, "a,b,label\n1,2,x\n")
    with pytest.raises(ValueError, match="out of range"):
        load_csv(path, label_column=5)


def test_too_few_columns(tmp_path):
    path = write_text(tmp_path, "label\nx\ny\n")
    with pytest.raises(ValueError, match="at least one feature column"):
        load_csv(path)


def test_write_then_load_round_trips_exactly(tmp_path):
    ds = small_fs_dataset(n=40, features=6)
    path = tmp_path / "rt.csv"
    write_dataset_csv(ds, path)
    back = load_csv(path)
    assert np.array_equal(back.features, ds.features)
    assert np.array_equal(back.labels, ds.labels)
    assert back.feature_names == ds.feature_names


def test_dataset_shape_validation():
    with pytest.raises(ValueError, match="2-d"):
        Dataset(features=np.zeros(3), labels=np.zeros(3, dtype=np.int64))
    with pytest.raises(ValueError, match="align"):
        Dataset(features=np.zeros((3, 2)), labels=np.zeros(2, dtype=np.int64))
    with pytest.raises(ValueError, match="feature_names"):
        Dataset(features=np.zeros((3, 2)), labels=np.zeros(3, dtype=np.int64),
                feature_names=["only_one"])


# ---- normalization --------------------------------------------------------


def test_normalize_scales_each_column_to_unit_range():
    ds = Dataset(features=np.array([[2.0, 7.0], [4.0, 7.0], [6.0, 7.0]]),
                 labels=np.array([0, 1, 0], dtype=np.int64))
    out = normalize_min_max(ds)
    assert np.array_equal(out.features[:, 0], [0.0, 0.5, 1.0])
    assert np.array_equal(out.features[:, 1], [0.0, 0.0, 0.0])  # constant column
    assert np.array_equal(ds.features[:, 0], [2.0, 4.0, 6.0])  # input untouched


def test_normalize_against_reference_clips():
    train = Dataset(features=np.array([[0.0], [10.0]]),
                    labels=np.array([0, 1], dtype=np.int64))
    test = Dataset(features=np.array([[-5.0], [5.0], [25.0]]),
                   labels=np.array([0, 1, 0], dtype=np.int64))
    out = normalize_min_max(test, reference=train)
    assert np.array_equal(out.features[:, 0], [0.0, 0.5, 1.0])


def test_normalize_reference_width_mismatch():
    a = Dataset(features=np.zeros((2, 2)), labels=np.array([0, 1], dtype=np.int64))
    b = Dataset(features=np.zeros((2, 3)), labels=np.array([0, 1], dtype=np.int64))
    with pytest.raises(ValueError, match="feature count"):
        normalize_min_max(a, reference=b)


# ---- splitting ------------------------------------------------------------


def balanced_dataset(n=100):
    rng = np.random.default_rng(7)
    features = np.arange(n, dtype=float).reshape(-1, 1)  # row id as the value
    labels = np.array([i % 2 for i in range(n)], dtype=np.int64)
    perm = rng.permutation(n)
    return Dataset(features=features[perm], labels=labels[perm])


def test_split_sizes_and_stratification():
    ds = balanced_dataset(100)
    parts = split(ds, 0.7, np.random.default_rng(3))
    assert parts.train.instance_count == 70
    assert parts.test.instance_count == 30
    assert int((parts.train.labels == 0).sum()) == 35
    assert int((parts.train.labels == 1).sum()) == 35


def test_split_partitions_without_overlap_or_loss():
    ds = balanced_dataset(60)
    parts = split(ds, 0.7, np.random.default_rng(11))
    train_ids = set(parts.train.features[:, 0].tolist())
    test_ids = set(parts.test.features[:, 0].tolist())
    assert not train_ids & test_ids
    assert train_ids | test_ids == set(ds.features[:, 0].tolist())


def test_split_preserves_original_row_order():
    ds = balanced_dataset(50)
    parts = split(ds, 0.6, np.random.default_rng(17))
    # membership is random but the kept rows stay in file order
    lookup = {float(ds.features[i, 0]): i for i in range(ds.instance_count)}

    def source_positions(group):
        return [lookup[float(v)] for v in group.features[:, 0]]

    assert source_positions(parts.train) == sorted(source_positions(parts.train))
    assert source_positions(parts.test) == sorted(source_positions(parts.test))


def test_split_is_deterministic_per_seed():
    ds = balanced_dataset(80)
    a = split(ds, 0.7, np.random.default_rng(5))
    b = split(ds, 0.7, np.random.default_rng(5))
    assert np.array_equal(a.train.features, b.train.features)
    assert np.array_equal(a.test.labels, b.test.labels)
    c = split(ds, 0.7, np.random.default_rng(6))
    assert not np.array_equal(a.train.features, c.train.features)


def test_split_clamps_tiny_classes_to_keep_both_sides():
    features = np.arange(4, dtype=float).reshape(-1, 1)
    labels = np.array([0, 0, 1, 1], dtype=np.int64)
    ds = Dataset(features=features, labels=labels)
    parts = split(ds, 0.99, np.random.default_rng(2))
    # round(0.99 * 2) = 2 would empty the test side; the cut clamps to 1
    assert parts.train.instance_count == 2
    assert parts.test.instance_count == 2


def test_split_warns_and_falls_back_for_singleton_class():
    features = np.arange(5, dtype=float).reshape(-1, 1)
    labels = np.array([0, 0, 0, 0, 1], dtype=np.int64)
    ds = Dataset(features=features, labels=labels)
    with pytest.warns(UserWarning, match="fewer than 2"):
        parts = split(ds, 0.6, np.random.default_rng(4))
    assert parts.train.instance_count + parts.test.instance_count == 5
    assert parts.train.instance_count >= 1
    assert parts.test.instance_count >= 1


def test_split_validates_fraction_and_size():
    ds = balanced_dataset(10)
    for bad in (0.0, 1.0, -0.2, 1.7):
        with pytest.raises(ValueError, match="train_fraction"):
            split(ds, bad, np.random.default_rng(0))
    lone = Dataset(features=np.zeros((1, 1)), labels=np.array([0], dtype=np.int64))
    with pytest.raises(ValueError, match="at least 2"):
        split(lone, 0.5, np.random.default_rng(0))
