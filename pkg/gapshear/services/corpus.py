from typing import Tuple
import logging

import numpy as np

from ..config import settings
from ..exceptions import CorpusError
from ..models.harness_models import CorpusKind, CorpusSpec
from ..models.string_models import Text
from .ptas import check_aperiodicity
from .randomness import SeedStream

logger = logging.getLogger(__name__)


class CorpusGenerator:
    """Seeded string pairs with a known upper bound on their edit distance"""

    def __init__(self):
        self.MAX_RETRIES = settings.APERIODIC_RETRIES
        self.EDIT_TYPES = ("insert", "delete", "substitute")

    def generate(self, spec: CorpusSpec) -> Tuple[bytes, bytes]:
        stream = SeedStream(spec.seed, f"corpus-{spec.kind.value}")
        alphabet = spec.alphabet

        if spec.kind == CorpusKind.DISJOINT_PAIR:
            x = self.random_string(spec.n, alphabet, stream.split("x"))
            return x, self.random_string(spec.n, spec.partner_alphabet, stream.split("y"))

        if spec.kind == CorpusKind.UNIFORM_RANDOM:
            x = self.random_string(spec.n, alphabet, stream.split("x"))
        elif spec.kind == CorpusKind.PERIODIC_STRESS:
            unit = self.random_string(min(spec.stress_period, max(spec.n, 1)), alphabet, stream.split("unit"))
            x = (unit * (spec.n // max(len(unit), 1) + 1))[:spec.n]
        else:
            x = self._aperiodic_string(spec, stream)

        y = self.plant_edits(x, spec.planted_edits, alphabet, stream.split("edits"))
        logger.info(f"Generated {spec.kind.value} pair n={spec.n} with {spec.planted_edits} planted edits")
        return x, y

    def random_string(self, n: int, alphabet: bytes, stream: SeedStream) -> bytes:
        symbols = np.frombuffer(alphabet, dtype=np.uint8)
        return symbols[stream.rng.integers(0, symbols.size, size=n)].tobytes()

    def plant_edits(self, data: bytes, edits: int, alphabet: bytes, stream: SeedStream) -> bytes:
        """Apply `edits` random operations; the result is within edit distance `edits`"""
        buffer = bytearray(data)
        for _ in range(edits):
            edit = self.EDIT_TYPES[stream.integer(0, 3)]
            if not buffer or (edit == "substitute" and len(alphabet) < 2):
                edit = "insert"
            if edit == "insert":
                position = stream.integer(0, len(buffer) + 1)
                buffer.insert(position, alphabet[stream.integer(0, len(alphabet))])
            elif edit == "delete":
                del buffer[stream.integer(0, len(buffer))]
            else:
                position = stream.integer(0, len(buffer))
                choices = [a for a in alphabet if a != buffer[position]]
                buffer[position] = choices[stream.integer(0, len(choices))]
        return bytes(buffer)

    def _aperiodic_string(self, spec: CorpusSpec, stream: SeedStream) -> bytes:
        for attempt in range(self.MAX_RETRIES):
            x = self.random_string(spec.n, spec.alphabet, stream.split(f"attempt-{attempt}"))
            violation = check_aperiodicity(Text(x), spec.window, spec.k)
            if violation is None:
                return x
            logger.debug(f"Attempt {attempt}: window at {violation} has period <= {2 * spec.k}")
        raise CorpusError(
            f"no aperiodic string found in {self.MAX_RETRIES} attempts "
            f"(n={spec.n}, Σ={len(spec.alphabet)}, ℓ={spec.window}, k={spec.k})"
        )


# Global corpus generator instance
corpus_generator = CorpusGenerator()
