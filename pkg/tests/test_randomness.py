import math

import numpy as np
import pytest

from gapshear.exceptions import ParameterError
from gapshear.services.randomness import (
    SEED_MASK, SeedStream, as_stream, default_walk_period, derive_seed, geometric_skip, iter_sample,
    make_full_randomness, make_shared_randomness, parse_seed, sample_range,
)


def test_parse_seed_accepts_decimal_and_hex():
    assert parse_seed("42") == 42
    assert parse_seed("0x2A") == 42
    assert parse_seed(-1) == SEED_MASK
    with pytest.raises(ParameterError):
        parse_seed("forty-two")
    with pytest.raises(ParameterError):
        parse_seed(str(1 << 64))


def test_derive_seed_depends_on_every_input():
    base = derive_seed(7, "label", 0)
    assert base == derive_seed(7, "label", 0)
    assert len({base, derive_seed(8, "label", 0), derive_seed(7, "other", 0), derive_seed(7, "label", 1)}) == 4


def test_split_streams_replay_and_differ():
    first, second = SeedStream(3), SeedStream(3)
    a, b = first.split("x"), second.split("x")
    assert [a.integer(0, 1000) for _ in range(5)] == [b.integer(0, 1000) for _ in range(5)]
    assert first.split("x").seed != a.seed


def test_as_stream_passes_streams_through():
    stream = SeedStream(1)
    assert as_stream(stream) is stream
    assert as_stream("0x10").seed == 16
    assert as_stream(None).seed == 0


def test_sample_range_examples():
    assert sample_range(0, 5, 1.0, SeedStream(0)).indices == [0, 1, 2, 3, 4]
    assert sample_range(0, 100, 0.0, SeedStream(0)).indices == []
    assert sample_range(5, 2, 0.5, SeedStream(0)).indices == []
    with pytest.raises(ParameterError):
        list(iter_sample(0, 10, 1.5, SeedStream(0)))


def test_sample_size_is_binomial():
    n, rate = 10 ** 6, 0.25
    size = sum(1 for _ in iter_sample(0, n, rate, SeedStream(9)))
    sigma = math.sqrt(n * rate * (1 - rate))
    assert abs(size - n * rate) <= 3 * sigma


def test_samples_are_increasing_and_in_range():
    indices = list(iter_sample(100, 5000, 0.03, SeedStream(4)))
    assert all(100 <= i < 5000 for i in indices)
    assert all(a < b for a, b in zip(indices, indices[1:]))


def test_sample_range_positions_pass_a_chi_square_check():
    # 0.999 quantile of χ² with 19 degrees of freedom
    critical = 43.820
    stream = SeedStream(31)
    counts = np.zeros(20)
    drawn = 0
    while drawn < 10 ** 5:
        indices = np.array(sample_range(0, 1000, 0.1, stream).indices, dtype=np.int64)
        counts += np.bincount(indices // 50, minlength=20)
        drawn += indices.size
    expected = counts.sum() / 20
    assert ((counts - expected) ** 2 / expected).sum() < critical


def test_sample_sizes_are_uncorrelated_across_calls():
    root = SeedStream(47)
    trials = 2000
    left, right = root.split("left"), root.split("right")
    split_pairs = np.array(
        [(len(sample_range(0, 400, 0.25, left)), len(sample_range(0, 400, 0.25, right))) for _ in range(trials)]
    )
    sequence = np.array([len(sample_range(0, 400, 0.25, root)) for _ in range(trials + 1)])
    bound = 3 / math.sqrt(trials)
    assert abs(np.corrcoef(split_pairs[:, 0], split_pairs[:, 1])[0, 1]) < bound
    assert abs(np.corrcoef(sequence[:-1], sequence[1:])[0, 1]) < bound


def test_geometric_skip_distribution():
    stream = SeedStream(2)
    assert {geometric_skip(1.0, stream) for _ in range(100)} == {1}
    draws = [geometric_skip(0.5, stream) for _ in range(100_000)]
    assert abs(np.mean(draws) - 2) <= 0.04
    draws = np.array([geometric_skip(0.1, stream) for _ in range(100_000)])
    tail = 0.9 ** 43
    sigma = math.sqrt(tail * (1 - tail) / draws.size)
    assert abs(np.mean(draws > 43) - tail) <= 3 * sigma
    with pytest.raises(ParameterError):
        geometric_skip(0.0, stream)


def test_shared_randomness_is_deterministic():
    first = make_shared_randomness(500, 20, 77)
    second = make_shared_randomness(500, 20, 77)
    assert np.array_equal(first.s_set, second.s_set)
    assert np.array_equal(first.hashes, second.hashes)
    assert first.size == second.size


def test_shared_randomness_for_a_single_symbol():
    randomness = make_shared_randomness(1, 2, 5)
    assert set(randomness.s_set.tolist()) <= {1, 2, 3}


def test_shared_randomness_rejects_small_periods():
    with pytest.raises(ParameterError):
        make_shared_randomness(10_000, 10, 1)
    with pytest.raises(ParameterError):
        make_shared_randomness(0, 10, 1)


def test_shared_randomness_sample_size():
    n, p = 10_000, 100
    expected = 3 * n * 2 * math.log(n) / p
    sizes = [make_shared_randomness(n, p, seed).size for seed in range(20)]
    assert abs(np.mean(sizes) - expected) <= 0.2 * expected


def test_extended_mode_hash_table_shape():
    randomness = make_shared_randomness(64, 10, 3, binary=False)
    assert randomness.hashes.shape == (randomness.size, 256)
    with pytest.raises(ParameterError):
        make_shared_randomness(64, 10, 3).advance(0, ord("a"))


def test_full_randomness_samples_every_iteration():
    randomness = make_full_randomness(16, 0)
    assert randomness.s_set.tolist() == list(range(1, 49))


def test_default_walk_period_meets_the_floor():
    for n in (1, 2, 100, 4096):
        assert default_walk_period(n) >= 2 * math.log(max(n, 2))
