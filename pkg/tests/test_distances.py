import itertools
import random

import pytest

from gapshear.models.string_models import Text
from gapshear.models.tester_models import Verdict
from gapshear.services.distances import (
    bounded_edit_distance, edit_distance_full, indel_distance, landau_vishkin, landau_vishkin_frontier,
)

from .conftest import binary_strings


@pytest.mark.parametrize("x, y, expected", [("abc", "abc", 0), ("kitten", "sitting", 3), ("ab", "", 2)])
def test_edit_distance_examples(x, y, expected):
    assert edit_distance_full(Text(x), Text(y)) == expected


@pytest.mark.parametrize("x, y, expected", [("abc", "abc", 0), ("ab", "ba", 2), ("a", "b", 2)])
def test_indel_distance_examples(x, y, expected):
    assert indel_distance(Text(x), Text(y)) == expected


def test_oracles_do_not_probe():
    x, y = Text("kitten"), Text("sitting")
    edit_distance_full(x, y)
    indel_distance(x, y)
    assert x.probes == 0 and y.probes == 0


def test_landau_vishkin_examples():
    assert landau_vishkin(Text("abc"), Text("abd"), 1) == Verdict.ACCEPT
    assert landau_vishkin(Text("kitten"), Text("sitting"), 2) == Verdict.REJECT
    assert landau_vishkin(Text(""), Text(""), 0) == Verdict.ACCEPT


def test_bounded_edit_distance():
    assert bounded_edit_distance(Text("kitten"), Text("sitting"), 3) == 3
    assert bounded_edit_distance(Text("kitten"), Text("sitting"), 2) is None
    assert bounded_edit_distance(Text("a"), Text("abcd"), 2) is None


def test_indel_is_between_one_and_two_edit_distances():
    for x, y in itertools.product(binary_strings(4), repeat=2):
        ed = edit_distance_full(Text(x), Text(y))
        assert ed <= indel_distance(Text(x), Text(y)) <= 2 * ed


def test_indel_sandwich_on_random_pairs():
    rng = random.Random(64)
    for _ in range(1000):
        alphabet = rng.choice([b"ab", b"abcd", b"abcdefghijklmnopqrstuvwxyz"])
        x = Text(bytes(rng.choices(alphabet, k=rng.randint(0, 64))))
        y = Text(bytes(rng.choices(alphabet, k=rng.randint(0, 64))))
        ed = edit_distance_full(x, y)
        assert ed <= indel_distance(x, y) <= 2 * ed, (x.tobytes(), y.tobytes())


def test_landau_vishkin_matches_dp_on_short_binary_pairs():
    for x, y in itertools.product(binary_strings(5), repeat=2):
        distance = edit_distance_full(Text(x), Text(y))
        for k in range(6):
            expected = Verdict.ACCEPT if distance <= k else Verdict.REJECT
            assert landau_vishkin(Text(x), Text(y), k) == expected, (x, y, k)


@pytest.mark.slow
def test_landau_vishkin_matches_dp_up_to_length_eight():
    for x, y in itertools.product(binary_strings(8), repeat=2):
        assert bounded_edit_distance(Text(x), Text(y), 8) == edit_distance_full(Text(x), Text(y)), (x, y)


def test_frontier_rows_reach_the_end_on_the_accepting_diagonal():
    rows = landau_vishkin_frontier(Text("abcdef"), Text("abxdef"), 2)
    assert len(rows) == 3
    assert rows[0][0] == 2
    assert rows[1][0] == 6
