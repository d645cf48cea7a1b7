import hashlib
import math
from typing import Iterator, Union
import logging

import numpy as np

from ..exceptions import ParameterError
from ..models.tester_models import SampleSet, SharedRandomness, log_n

logger = logging.getLogger(__name__)

SEED_MASK = (1 << 64) - 1


def parse_seed(value: Union[str, int]) -> int:
    """Accept a decimal or 0x-prefixed hexadecimal 64-bit seed"""
    if isinstance(value, int):
        return value & SEED_MASK
    text = value.strip().lower()
    try:
        seed = int(text, 16) if text.startswith("0x") else int(text, 10)
    except ValueError as e:
        raise ParameterError(f"invalid seed {value!r}") from e
    if not 0 <= seed <= SEED_MASK:
        raise ParameterError(f"seed {value!r} does not fit in 64 bits")
    return seed


def derive_seed(seed: int, label: str, counter: int = 0) -> int:
    digest = hashlib.blake2b(digest_size=8)
    digest.update((seed & SEED_MASK).to_bytes(8, "little"))
    digest.update(label.encode("utf-8"))
    digest.update(counter.to_bytes(8, "little"))
    return int.from_bytes(digest.digest(), "little")


class SeedStream:
    """
    Single-owner random stream with labelled splitting.

    A child depends on (parent seed, parent label, child label, split counter),
    so equal seeds replay identical computations.
    """

    def __init__(self, seed: int, label: str = "root"):
        self.seed = seed & SEED_MASK
        self.label = label
        self._splits = 0
        self.rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed)))

    def __repr__(self) -> str:
        return f"SeedStream({self.label}, seed={self.seed:#018x})"

    def split(self, label: str) -> "SeedStream":
        counter = self._splits
        self._splits += 1
        child_label = f"{self.label}/{label}"
        return SeedStream(derive_seed(self.seed, child_label, counter), child_label)

    def bernoulli(self, rate: float) -> bool:
        return bool(self.rng.random() < rate)

    def coin(self) -> int:
        return int(self.rng.integers(0, 2))

    def integer(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo..hi)"""
        return int(self.rng.integers(lo, hi))

    def geometric(self, rate: float) -> int:
        return int(self.rng.geometric(rate))


def as_stream(seed: Union[int, str, SeedStream, None], label: str = "root") -> SeedStream:
    if isinstance(seed, SeedStream):
        return seed
    if seed is None:
        seed = 0
    return SeedStream(parse_seed(seed), label)


def _check_rate(rate: float) -> None:
    if not 0 <= rate <= 1:
        raise ParameterError(f"sampling rate {rate} outside [0, 1]")


def iter_sample(lo: int, hi: int, rate: float, stream: SeedStream) -> Iterator[int]:
    """Bernoulli(rate) subset of [lo..hi) in increasing order, via geometric skips"""
    _check_rate(rate)
    if hi <= lo or rate == 0:
        return
    if rate == 1:
        yield from range(lo, hi)
        return
    chunk = max(16, min(4096, int(rate * (hi - lo) / 4) + 1))
    position = lo - 1
    while True:
        for skip in stream.rng.geometric(rate, size=chunk):
            position += int(skip)
            if position >= hi:
                return
            yield position


def sample_range(lo: int, hi: int, rate: float, stream: SeedStream) -> SampleSet:
    return SampleSet(lo=lo, hi=max(lo, hi), rate=rate, indices=list(iter_sample(lo, hi, rate, stream)))


def geometric_skip(rate: float, stream: SeedStream) -> int:
    """Offset of the next success in an i.i.d. Bernoulli(rate) sequence, at least 1"""
    if not 0 < rate <= 1:
        raise ParameterError(f"geometric rate {rate} outside (0, 1]")
    return stream.geometric(rate)


def default_walk_period(n: int) -> int:
    return math.ceil(2 * log_n(n))


def _build_randomness(n: int, p: int, seed: int, rate: float, binary: bool) -> SharedRandomness:
    stream = SeedStream(seed, "shared-randomness")
    s_set = np.fromiter(
        (i + 1 for i in iter_sample(0, 3 * n, rate, stream.split("sample-set"))), dtype=np.int64
    )
    hash_stream = stream.split("hashes")
    if binary:
        hashes = hash_stream.rng.integers(0, 2, size=s_set.size, dtype=np.uint8)
    else:
        hashes = hash_stream.rng.integers(0, 2, size=(s_set.size, 256), dtype=np.uint8)
    return SharedRandomness(n=n, p=p, seed=seed, binary=binary, s_set=s_set, hashes=hashes)


def make_shared_randomness(n: int, p: int, seed: Union[int, str], binary: bool = True) -> SharedRandomness:
    if n < 1:
        raise ParameterError(f"shared randomness needs n >= 1, got {n}")
    floor = 2 * log_n(n)
    if p < floor:
        raise ParameterError(f"p={p} below 2 ln n = {floor:.2f}")
    seed = parse_seed(seed)
    randomness = _build_randomness(n, p, seed, min(1.0, floor / p), binary)
    logger.debug(f"Shared randomness n={n} p={p}: |S|={randomness.size}")
    return randomness


def make_full_randomness(n: int, seed: Union[int, str], binary: bool = True) -> SharedRandomness:
    """Every iteration sampled: the 3n hash functions of the linear-time embedding"""
    if n < 1:
        raise ParameterError(f"shared randomness needs n >= 1, got {n}")
    return _build_randomness(n, 1, parse_seed(seed), 1.0, binary)
