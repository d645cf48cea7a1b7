"""
Sampled random walk tester and the sublinear edit-to-Hamming embedding.

The walk moves two cursors over X and Y. Only sampled iterations look at
the strings; on a sampled mismatch a fair coin picks which cursor moves.
The embedding runs the same process on one string at a time, replacing the
coin by a hash of the local symbol, so both strings can be embedded
independently with shared randomness R.
"""
import time
from collections import Counter
from typing import Iterator, Optional, Union
import logging

from ..models.string_models import StringView
from ..models.tester_models import (
    WALK_THRESHOLD_FACTOR, DistortionStats, Embedding, GapMode, GapVerdict, SharedRandomness,
    Verdict, WalkParams, WalkTrace,
)
from ..exceptions import ParameterError
from .distances import edit_distance_full
from .randomness import (
    SeedStream, as_stream, derive_seed, geometric_skip, make_full_randomness, make_shared_randomness,
)
from .strings import hamming_distance

logger = logging.getLogger(__name__)

PAD_SYMBOL = ord("0")


def _coins(seed: Union[int, str, SeedStream, None]):
    stream = as_stream(seed, "walk")
    return stream.split("sampling"), stream.split("moves")


def _sampling_bits(rate: float, stream: SeedStream) -> Iterator[int]:
    """The s-coins of the walk, expanded from the same geometric skips the batched walk uses"""
    while True:
        skip = geometric_skip(rate, stream)
        for _ in range(skip - 1):
            yield 0
        yield 1


class WalkEmbeddingEngine:
    """Random-walk gap tester plus the embedding that shares its structure"""

    def __init__(self):
        self.THRESHOLD_FACTOR = WALK_THRESHOLD_FACTOR

    def sampled_random_walk(
        self,
        x_str: StringView,
        y_str: StringView,
        params: WalkParams,
        seed: Union[int, str, SeedStream, None] = 0,
        randomness: Optional[SharedRandomness] = None,
    ) -> WalkTrace:
        """
        Runs of unsampled iterations are skipped in one step each.

        Given shared randomness R, the coins come from R instead of the seed and
        the walk runs over X·0^{3n} and Y·0^{3n} for 3n iterations: iteration i is
        sampled iff i is in S, and the j-th sampled iteration tosses r = h_j(X'[x]).
        A sampled match then moves both cursors by r, which leaves c unchanged.
        """
        if randomness is not None:
            return self._walk_with_shared_coins(x_str, y_str, params, randomness)
        sampling, moves = _coins(seed)
        x_len, y_len = len(x_str), len(y_str)
        x = y = c = iterations = 0
        while x < x_len and y < y_len:
            aligned = geometric_skip(params.rate, sampling) - 1
            room = min(x_len - x, y_len - y)
            if aligned >= room:
                x, y = x + room, y + room
                iterations += room
                break
            x, y = x + aligned, y + aligned
            iterations += aligned + 1
            if x_str.probe(x) != y_str.probe(y):
                step = moves.coin()
                x, y = x + step, y + 1 - step
                c += 1
            else:
                x, y = x + 1, y + 1
        return WalkTrace(
            c=c, final_x=x, final_y=y, x_len=x_len, y_len=y_len,
            threshold=params.threshold, iterations=iterations,
        )

    def sampled_random_walk_naive(
        self,
        x_str: StringView,
        y_str: StringView,
        params: WalkParams,
        seed: Union[int, str, SeedStream, None] = 0,
    ) -> WalkTrace:
        """One loop turn per iteration; same outputs as the batched walk"""
        sampling, moves = _coins(seed)
        bits = _sampling_bits(params.rate, sampling)
        x_len, y_len = len(x_str), len(y_str)
        x = y = c = iterations = 0
        while x < x_len and y < y_len:
            iterations += 1
            if next(bits) and x_str.probe(x) != y_str.probe(y):
                step = moves.coin()
                x, y = x + step, y + 1 - step
                c += 1
            else:
                x, y = x + 1, y + 1
        return WalkTrace(
            c=c, final_x=x, final_y=y, x_len=x_len, y_len=y_len,
            threshold=params.threshold, iterations=iterations,
        )

    def gap_walk(
        self,
        x_str: StringView,
        y_str: StringView,
        k: int,
        p: int,
        seed: Union[int, str, SeedStream, None] = 0,
    ) -> GapVerdict:
        started = time.perf_counter()
        before = (x_str.counter.value, y_str.counter.value)
        params = WalkParams(k=k, p=p, n=max(len(x_str), len(y_str), 1))
        trace = self.sampled_random_walk(x_str, y_str, params, seed)
        verdict = Verdict.ACCEPT if trace.accepted else Verdict.REJECT
        probes_x = x_str.counter.value - before[0]
        probes_y = y_str.counter.value - before[1]
        logger.info(f"gap_walk k={k} p={p}: {verdict.value}, c={trace.c}, leftover={trace.leftover}")
        return GapVerdict(
            verdict=verdict,
            mode=GapMode.WALK,
            k=k,
            probes=probes_x if x_str.counter is y_str.counter else probes_x + probes_y,
            probes_x=probes_x,
            probes_y=probes_y,
            wall_time_ms=(time.perf_counter() - started) * 1000,
            details={"p": p, "c": trace.c, "leftover": trace.leftover, "threshold": trace.threshold},
        )

    def sublinear_embed(self, x_str: StringView, randomness: SharedRandomness) -> Embedding:
        """f(X, R): one output symbol per sampled iteration of X·0^{3n}"""
        self._check_length(x_str, randomness)
        x_len = len(x_str)
        output = bytearray()
        x = 0
        previous = 0
        for j, i in enumerate(randomness.s_set.tolist()):
            x += i - previous - 1
            symbol = x_str.probe(x) if x < x_len else PAD_SYMBOL
            output.append(symbol)
            x += randomness.advance(j, symbol)
            previous = i
        return Embedding(output=bytes(output), randomness=randomness)

    def sublinear_embed_naive(self, x_str: StringView, randomness: SharedRandomness) -> Embedding:
        """Iterates all 3n steps explicitly"""
        self._check_length(x_str, randomness)
        x_len = len(x_str)
        sampled = {int(i): j for j, i in enumerate(randomness.s_set.tolist())}
        output = bytearray()
        x = 0
        for i in range(1, 3 * randomness.n + 1):
            j = sampled.get(i)
            if j is None:
                x += 1
                continue
            symbol = x_str.probe(x) if x < x_len else PAD_SYMBOL
            output.append(symbol)
            x += randomness.advance(j, symbol)
        return Embedding(output=bytes(output), randomness=randomness)

    def _walk_with_shared_coins(
        self,
        x_str: StringView,
        y_str: StringView,
        params: WalkParams,
        randomness: SharedRandomness,
    ) -> WalkTrace:
        if not randomness.binary:
            raise ParameterError("shared coins need binary randomness, where each h_j is a bijection on {0, 1}")
        self._check_length(x_str, randomness)
        self._check_length(y_str, randomness)
        x_len, y_len = len(x_str), len(y_str)
        x = y = c = 0
        previous = 0
        for j, i in enumerate(randomness.s_set.tolist()):
            gap = i - previous - 1
            x, y = x + gap, y + gap
            x_symbol = x_str.probe(x) if x < x_len else PAD_SYMBOL
            y_symbol = y_str.probe(y) if y < y_len else PAD_SYMBOL
            r = randomness.advance(j, x_symbol)
            if x_symbol != y_symbol:
                x, y = x + r, y + 1 - r
                c += 1
            else:
                x, y = x + r, y + r
            previous = i
        tail = 3 * randomness.n - previous
        x, y = x + tail, y + tail
        return WalkTrace(
            c=c,
            final_x=min(x, x_len),
            final_y=min(y, y_len),
            x_len=x_len,
            y_len=y_len,
            threshold=params.threshold,
            iterations=3 * randomness.n,
        )

    def cgk_embed_baseline(
        self, x_str: StringView, seed: Union[int, str], n: Optional[int] = None, binary: bool = True,
    ) -> bytes:
        """Linear-time embedding: every one of the 3n iterations is sampled"""
        n = n if n is not None else max(len(x_str), 1)
        return self.sublinear_embed(x_str, make_full_randomness(n, seed, binary)).output

    def embed_distortion_check(
        self,
        x_str: StringView,
        y_str: StringView,
        p: int,
        trials: int,
        seed: Union[int, str] = 0,
        binary: bool = True,
    ) -> DistortionStats:
        """Empirical frequency of (ED-p+1)/(p+1) <= HD <= 1296·ED² over fresh R"""
        if trials < 1:
            raise ParameterError(f"trials must be positive, got {trials}")
        n = max(len(x_str), len(y_str), 1)
        distance = edit_distance_full(x_str, y_str)
        lower = (distance - p + 1) / (p + 1)
        upper = self.THRESHOLD_FACTOR * distance * distance
        base = as_stream(seed, "distortion").seed
        histogram: Counter = Counter()
        lower_ok = upper_ok = joint_ok = 0
        for trial in range(trials):
            randomness = make_shared_randomness(n, p, derive_seed(base, "trial", trial), binary)
            hd = hamming_distance(
                self.sublinear_embed(x_str, randomness).output,
                self.sublinear_embed(y_str, randomness).output,
            )
            histogram[hd] += 1
            lower_ok += hd >= lower
            upper_ok += hd <= upper
            joint_ok += lower <= hd <= upper
        return DistortionStats(
            trials=trials,
            edit_distance=distance,
            p=p,
            lower_bound=lower,
            upper_bound=upper,
            lower_frequency=lower_ok / trials,
            upper_frequency=upper_ok / trials,
            joint_frequency=joint_ok / trials,
            mean_hamming=sum(hd * count for hd, count in histogram.items()) / trials,
            hamming_histogram=dict(sorted(histogram.items())),
        )

    def _check_length(self, x_str: StringView, randomness: SharedRandomness) -> None:
        if len(x_str) > randomness.n:
            raise ParameterError(f"randomness built for n={randomness.n}, string has length {len(x_str)}")


# Global walk and embedding engine instance
walk_engine = WalkEmbeddingEngine()
