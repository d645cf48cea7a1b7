import math
import random

import pytest

from gapshear.exceptions import ContractError, ParameterError
from gapshear.models.string_models import Text
from gapshear.services.lce_batch import (
    bar_lce_single, batch_bar_lce, build_lce_index, compose_bar_lce, find_break2, query_lce_index,
)
from gapshear.services.randomness import SeedStream
from gapshear.services.strings import lce_exact, period_of


def random_text(rng, n, alphabet=b"ab"):
    return Text(bytes(rng.choice(alphabet) for _ in range(n)))


def assert_witness(x_str, y_str, j, value):
    xs, ys = x_str.tobytes(), y_str.tobytes()
    assert value == min(len(xs), len(ys) - j) or xs[value] != ys[j + value]


def test_bar_lce_single_examples():
    assert bar_lce_single(Text("abcd"), Text("abcf"), 0.5, 0, SeedStream(0)) == 3
    x = Text("abcdefgh" * 10)
    assert bar_lce_single(x, x, 16, 0, SeedStream(0)) == 80
    assert bar_lce_single(x, x, 4, 81, SeedStream(0)) == 0
    with pytest.raises(ParameterError):
        bar_lce_single(x, x, 0, 0, SeedStream(0))


def test_bar_lce_single_tail_on_a_single_mismatch():
    x = Text("a" * 1000)
    y = Text("a" * 499 + "b" + "a" * 500)
    trials, overshoots = 1000, 0
    for seed in range(trials):
        value = bar_lce_single(x, y, 100, 0, SeedStream(seed))
        assert value >= 499
        assert_witness(x, y, 0, value)
        overshoots += value > 499
    bound = math.exp(-1 / 100)
    assert overshoots / trials <= bound + 3 * math.sqrt(bound * (1 - bound) / trials)


@pytest.mark.parametrize("r", [2, 8, 32])
def test_bar_lce_tail_against_every_budget(r):
    mismatches = [40, 80, 120, 160, 200, 240, 280, 320, 360]
    x = Text("a" * 400)
    y = Text(bytes(ord("b") if i in mismatches else ord("a") for i in range(400)))
    trials = 1000
    values = [bar_lce_single(x, y, r, 0, SeedStream(seed)) for seed in range(trials)]
    for k in (0, 1, 2, 4, 8):
        lce_k = lce_exact(x, y, k, 0, 0)
        bound = math.exp(-(k + 1) / r)
        frequency = sum(v > lce_k for v in values) / trials
        assert frequency <= bound + 3 * math.sqrt(bound * (1 - bound) / trials) + 1 / trials


def test_compose_bar_lce_examples():
    assert compose_bar_lce(3, 7, 5) == 3
    assert compose_bar_lce(5, 7, 5) == 12


def test_compose_chains_over_saturating_segments():
    x = Text("abcd" * 8)
    segments = [(0, 8), (8, 16), (16, 24), (24, 32)]
    total = 0
    for lo, hi in reversed(segments):
        first = bar_lce_single(x.fragment(lo, hi), x, 4, lo, SeedStream(lo))
        total = compose_bar_lce(first, total, hi - lo)
    assert total == 32


def test_compose_stops_at_the_first_short_segment():
    assert compose_bar_lce(2, compose_bar_lce(4, 9, 4), 4) == 2
    assert compose_bar_lce(4, compose_bar_lce(1, 9, 4), 4) == 5


def test_find_break2_examples():
    assert find_break2(Text("abababab"), 4, 2, SeedStream(0)) == 8
    t = Text("ab" * 10 + "bb")
    ell = find_break2(t, 0.5, 3, SeedStream(0))
    data = t.tobytes()
    assert 6 <= ell < len(data)
    assert period_of(list(data[ell - 5:ell + 1])) > 3
    assert any(data[i] != data[i % 2] for i in range(ell + 1))
    with pytest.raises(ContractError):
        find_break2(Text("abcdefgh"), 1, 2, SeedStream(0))


def test_find_break2_non_saturating_returns_are_breaks():
    rng = random.Random(4)
    for trial in range(200):
        q = rng.randint(1, 5)
        unit = bytes(rng.choice(b"ab") for _ in range(rng.randint(1, q)))
        data = bytearray((unit * 100)[:rng.randint(2 * q, 100)])
        for _ in range(rng.randint(0, 3)):
            position = rng.randrange(2 * q, len(data)) if len(data) > 2 * q else None
            if position is not None:
                data[position] = rng.choice(b"abc")
        t = Text(bytes(data))
        ell = find_break2(t, rng.choice([0.5, 2, 8]), q, SeedStream(trial))
        assert 2 * q <= ell <= len(data)
        if ell < len(data):
            assert period_of(list(data[ell - 2 * q + 1:ell + 1])) > q


def test_batch_of_one_shift_is_a_single_query():
    rng = random.Random(2)
    x, y = random_text(rng, 60), random_text(rng, 70)
    batch = batch_bar_lce(x, y, 4, range(3, 4), SeedStream(5, "t"))
    assert batch == {3: bar_lce_single(x, y, 4, 3, SeedStream(5, "t").split("single-3"))}


def test_batch_on_a_periodic_pair():
    x = Text("ab" * 50)
    values = batch_bar_lce(x, Text("ab" * 50), 4, range(0, 5), SeedStream(0))
    assert values == {0: 100, 1: 0, 2: 98, 3: 0, 4: 96}


def test_batch_values_are_lower_bounded_by_exact_matches():
    rng = random.Random(6)
    for trial in range(200):
        n = rng.randint(4, 120)
        if rng.random() < 0.5:
            unit = bytes(rng.choice(b"ab") for _ in range(rng.randint(1, 4)))
            x_bytes = bytearray((unit * 120)[:n])
        else:
            x_bytes = bytearray(rng.choice(b"ab") for _ in range(n))
        y_bytes = bytearray(rng.choice(b"ab") for _ in range(rng.randint(0, 6))) + x_bytes
        for _ in range(rng.randint(0, 2)):
            x_bytes[rng.randrange(n)] = rng.choice(b"ab")
        x, y = Text(bytes(x_bytes)), Text(bytes(y_bytes))
        lo = rng.randint(0, 5)
        J = range(lo, lo + rng.randint(1, 6))
        if J[-1] > len(y):
            continue
        values = batch_bar_lce(x, y, rng.choice([0.5, 2, 6]), J, SeedStream(trial))
        for j in J:
            assert values[j] >= lce_exact(x, y, 0, 0, j), (trial, j)
            assert values[j] <= min(len(x), len(y) - j)


def test_index_over_empty_text():
    idx = build_lce_index(Text(""), Text("abc"), 2, range(-1, 2), SeedStream(0))
    assert idx.anchors == [0]
    assert query_lce_index(idx, 0, SeedStream(1)) == {-1: 0, 0: 0, 1: 0}


def test_index_on_identical_texts_saturates():
    rng = random.Random(3)
    x = random_text(rng, 50, b"abcdefgh")
    idx = build_lce_index(x, x, 4, range(0, 1), SeedStream(0))
    assert idx.q == 4
    for anchor in idx.anchors:
        assert int(idx.row(anchor)[0]) == 50 - anchor
    for position in range(51):
        assert query_lce_index(idx, position, SeedStream(position)) == {0: 50 - position}


def test_index_queries_outside_the_text_and_at_anchors():
    rng = random.Random(9)
    x, y = random_text(rng, 64), random_text(rng, 64)
    idx = build_lce_index(x, y, 2, range(-2, 3), SeedStream(0))
    assert query_lce_index(idx, -5, SeedStream(1)) == {d: 0 for d in range(-2, 3)}
    anchor = idx.anchors[1]
    stored = idx.row(anchor)
    assert query_lce_index(idx, anchor, SeedStream(2)) == {d: int(v) for d, v in zip(range(-2, 3), stored)}
    with pytest.raises(ParameterError):
        idx.row(anchor + 1)


def test_index_queries_are_lower_bounded():
    rng = random.Random(12)
    for trial in range(10):
        x_bytes = bytes(rng.choice(b"ab") for _ in range(128))
        y = bytearray(x_bytes)
        for _ in range(4):
            y[rng.randrange(128)] = rng.choice(b"ab")
        x, y_str = Text(x_bytes), Text(bytes(y))
        delta = range(-3, 4)
        idx = build_lce_index(x, y_str, 2, delta, SeedStream(trial))
        for position in range(0, 129, 7):
            values = query_lce_index(idx, position, SeedStream(1000 + position))
            for d in delta:
                assert lce_exact(x, y_str, 0, position, position + d) <= values[d] <= 128 - position
