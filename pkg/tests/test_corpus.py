import pytest

from gapshear.exceptions import CorpusError
from gapshear.models.harness_models import CorpusKind, CorpusSpec
from gapshear.models.string_models import Text
from gapshear.services.corpus import corpus_generator
from gapshear.services.distances import edit_distance_full
from gapshear.services.ptas import check_aperiodicity
from gapshear.services.randomness import SeedStream


def test_no_planted_edits_gives_identical_strings():
    x, y = corpus_generator.generate(CorpusSpec(n=500, seed=1))
    assert x == y
    assert len(x) == 500
    assert set(x) <= set(b"abcdefghijklmnopqrstuvwxyz")


@pytest.mark.parametrize("edits", [1, 3, 10])
def test_planted_edits_bound_the_distance(edits):
    for seed in range(5):
        x, y = corpus_generator.generate(CorpusSpec(n=200, alphabet_size=4, planted_edits=edits, seed=seed))
        assert len(x) == 200
        assert abs(len(x) - len(y)) <= edits
        assert edit_distance_full(Text(x), Text(y)) <= edits


def test_generation_is_seeded():
    spec = CorpusSpec(n=300, planted_edits=4, seed=9)
    assert corpus_generator.generate(spec) == corpus_generator.generate(spec)
    assert corpus_generator.generate(spec) != corpus_generator.generate(spec.model_copy(update={"seed": 10}))


def test_binary_alphabet():
    x, y = corpus_generator.generate(CorpusSpec(n=400, binary=True, planted_edits=3, seed=2))
    assert set(x) <= set(b"01")
    assert set(y) <= set(b"01")


def test_disjoint_pair_shares_no_symbol():
    x, y = corpus_generator.generate(CorpusSpec(n=300, kind=CorpusKind.DISJOINT_PAIR, seed=3))
    assert len(x) == len(y) == 300
    assert not set(x) & set(y)


@pytest.mark.parametrize("size", [27, 128, 256])
def test_wide_byte_alphabets(size):
    spec = CorpusSpec(n=2000, alphabet_size=size, planted_edits=5, seed=3)
    assert spec.alphabet == bytes(range(size))
    x, y = corpus_generator.generate(spec)
    assert set(x) <= set(spec.alphabet)
    assert set(y) <= set(spec.alphabet)
    assert len(set(x)) > size // 2
    assert edit_distance_full(Text(x), Text(y)) <= 5


def test_wide_disjoint_pair_shares_no_symbol():
    x, y = corpus_generator.generate(CorpusSpec(n=1000, alphabet_size=128, kind=CorpusKind.DISJOINT_PAIR, seed=4))
    assert set(x) <= set(range(128))
    assert set(y) <= set(range(128, 256))


def test_periodic_stress_repeats_its_unit():
    x, _ = corpus_generator.generate(CorpusSpec(n=103, kind=CorpusKind.PERIODIC_STRESS, stress_period=5, seed=4))
    assert len(x) == 103
    assert all(x[i] == x[i + 5] for i in range(len(x) - 5))


def test_aperiodic_kind_passes_its_own_check():
    spec = CorpusSpec(n=2000, kind=CorpusKind.APERIODIC_VERIFIED, window=32, k=4, planted_edits=2, seed=5)
    x, _ = corpus_generator.generate(spec)
    assert check_aperiodicity(Text(x), 32, 4) is None


def test_unsatisfiable_aperiodic_corpus():
    spec = CorpusSpec(n=64, alphabet_size=1, kind=CorpusKind.APERIODIC_VERIFIED, window=8, k=1)
    with pytest.raises(CorpusError):
        corpus_generator.generate(spec)


@pytest.mark.parametrize(
    "fields",
    [
        {"n": -1},
        {"n": 10, "alphabet_size": 257},
        {"n": 10, "alphabet_size": 129, "kind": CorpusKind.DISJOINT_PAIR},
        {"n": 10, "kind": CorpusKind.APERIODIC_VERIFIED, "window": 8},
        {"n": 10, "kind": CorpusKind.DISJOINT_PAIR, "binary": True},
    ],
)
def test_invalid_corpus_specs(fields):
    with pytest.raises(ValueError):
        CorpusSpec(**fields)


def test_plant_edits_on_an_empty_string_inserts():
    stream = SeedStream(0, "plant")
    assert len(corpus_generator.plant_edits(b"", 1, b"ab", stream)) == 1
