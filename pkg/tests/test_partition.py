import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cvxtx import (
    PartitionError,
    Partitioning,
    build_validation_partitions,
    check_scalable,
    validate_partitioning,
)
from cvxtx.partition import random_partitioning, read_partition_file, write_partition_file


def as_sets(index):
    return [set(int(i) + 1 for i in s) for s in index.sets]


@pytest.mark.parametrize(
    "labels, p, expected",
    [
        ([1, 2, 1], 2, [{1, 3}, {2}]),
        ([1, 2, 3], 3, [{1}, {2}, {3}]),
        ([1, 1, 1, 2], 2, [{1, 2, 3}, {4}]),
    ],
)
def test_build_validation_partitions(labels, p, expected):
    assert as_sets(build_validation_partitions(Partitioning(labels, p))) == expected


def test_validation_index_is_one_based():
    index = build_validation_partitions(Partitioning([2, 1, 2], 2))
    assert list(index[1]) == [1]
    assert list(index[2]) == [0, 2]
    with pytest.raises(IndexError):
        index[3]


@pytest.mark.parametrize(
    "labels, p, clause",
    [
        ([1, 3, 1], 3, "union"),
        ([1, 2, 0], 2, "range"),
        ([1, 1, 1], 1, "fold-count"),
        ([1, 2, 3], 4, "fold-count"),
    ],
)
def test_validate_reports_violation(labels, p, clause):
    violation = validate_partitioning(labels, p)
    assert violation is not None and violation.clause == clause


def test_validate_ok():
    assert validate_partitioning([1, 2], 2) is None


def test_empty_fold_named():
    assert validate_partitioning([1, 3, 1], 3).fold == 2


def test_partitioning_raises_on_invalid():
    with pytest.raises(PartitionError):
        Partitioning([1, 3, 1], 3)
    with pytest.raises(PartitionError):
        Partitioning([1.5, 2.0], 2)


@pytest.mark.parametrize(
    "labels, ok, fold",
    [
        ([1, 2, 3], True, None),
        ([1, 2], False, 1),
        ([1, 1, 1, 2], False, 1),
    ],
)
def test_check_scalable(labels, ok, fold):
    violation = check_scalable(Partitioning(labels))
    assert (violation is None) == ok
    if not ok:
        assert violation.fold == fold


@st.composite
def partitionings(draw):
    n = draw(st.integers(2, 60))
    p = draw(st.integers(2, n))
    labels = list(range(1, p + 1)) + draw(st.lists(st.integers(1, p), min_size=n - p, max_size=n - p))
    perm = draw(st.permutations(labels))
    return Partitioning(perm, p)


@given(partitionings())
def test_set_sizes_sum_to_n_and_training_sizes_to_n_times_p_minus_1(part):
    index = build_validation_partitions(part)
    sizes = [len(s) for s in index.sets]
    n, p = part.n_rows, part.p
    assert sum(sizes) == n
    assert sum(n - s for s in sizes) == n * (p - 1)
    assert sorted(np.concatenate(index.sets).tolist()) == list(range(n))
    for fold, rows in enumerate(index.sets, start=1):
        assert np.all(part.labels[rows] == fold)
        assert np.all(np.diff(rows) > 0)


@given(partitionings(), st.randoms())
@settings(max_examples=50)
def test_relabelling_folds_permutes_sets(part, rnd):
    names = list(range(1, part.p + 1))
    rnd.shuffle(names)
    relabel = np.array([0] + names)
    renamed = Partitioning(relabel[part.labels], part.p)
    original = build_validation_partitions(part)
    permuted = build_validation_partitions(renamed)
    for fold in range(1, part.p + 1):
        assert np.array_equal(original[fold], permuted[int(relabel[fold])])


def test_random_partitioning_is_balanced_and_seeded():
    a = random_partitioning(103, 10, 7)
    b = random_partitioning(103, 10, 7)
    assert np.array_equal(a.labels, b.labels)
    sizes = a.fold_sizes()
    assert sizes.max() - sizes.min() <= 1


def test_partition_file_round_trip(tmp_path):
    part = Partitioning([2, 1, 3, 1, 2], 3)
    path = tmp_path / "labels.txt"
    write_partition_file(path, part)
    assert path.read_text() == "2\n1\n3\n1\n2\n"
    assert np.array_equal(read_partition_file(path).labels, part.labels)


def test_partition_file_rejects_garbage(tmp_path):
    path = tmp_path / "labels.txt"
    path.write_text("1\ntwo\n")
    with pytest.raises(ValueError):
        read_partition_file(path)
