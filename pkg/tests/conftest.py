import itertools
import logging

import pytest

from gapshear.models.harness_models import CorpusKind, CorpusSpec
from gapshear.models.string_models import Text
from gapshear.models.tester_models import RateConfig
from gapshear.services.corpus import corpus_generator


@pytest.fixture(autouse=True)
def restore_root_logger():
    """The CLI installs its own root handler; put the previous ones back"""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers = handlers
    root.setLevel(level)


@pytest.fixture
def rates():
    return RateConfig()


@pytest.fixture
def strict_rates():
    """λ = 2, the exponent the sandwich suites run at"""
    return RateConfig(failure_exponent=2.0)


def binary_strings(max_len):
    for length in range(max_len + 1):
        for symbols in itertools.product(b"ab", repeat=length):
            yield bytes(symbols)


def make_pair(n, planted, seed, kind=CorpusKind.UNIFORM_RANDOM, **extra):
    x_bytes, y_bytes = corpus_generator.generate(
        CorpusSpec(n=n, kind=kind, planted_edits=planted, seed=seed, **extra)
    )
    return Text(x_bytes, label="X"), Text(y_bytes, label="Y")


def disjoint_pair(n, seed):
    return make_pair(n, 0, seed, kind=CorpusKind.DISJOINT_PAIR)
