import bisect
import math
import time
from typing import Optional, Union
import logging

import numpy as np

from ..config import settings
from ..exceptions import ContractError, ParameterError, UnluckyRunError
from ..models.string_models import Fragment, StringView
from ..models.tester_models import (
    Decomposition, GapMode, GapVerdict, PhraseDistance, PhraseOutcome, RateConfig, SumEstimate, Verdict,
)
from .distances import bounded_edit_distance
from .randomness import SeedStream, as_stream, iter_sample
from .strings import find_occurrences

logger = logging.getLogger(__name__)


def check_aperiodicity(x_str: StringView, ell: int, k: int) -> Optional[int]:
    """
    None if every window X[i..i+ℓ) has period above 2k, else the smallest
    violating i. Runs on uninstrumented data.
    """
    if ell <= 0:
        raise ParameterError(f"window length must be positive, got {ell}")
    data = np.frombuffer(x_str.tobytes(), dtype=np.uint8)
    n = data.size
    if ell > n:
        return None
    windows = n - ell + 1
    first = None
    for p in range(1, min(2 * k, ell) + 1):
        span = ell - p
        # window i has period p iff data[t] == data[t+p] for all t in [i..i+span)
        mismatches = np.concatenate(([0], np.cumsum(data[:-p] != data[p:]))) if p < n else np.zeros(1, dtype=np.int64)
        counts = mismatches[span:span + windows] - mismatches[:windows]
        hits = np.flatnonzero(counts == 0)
        if hits.size and (first is None or hits[0] < first):
            first = int(hits[0])
            if first == 0:
                break
    return first


def _harmonic(size: int) -> float:
    if size <= 0:
        return 0.0
    return float(np.sum(1.0 / np.arange(1, size + 1)))


class AperiodicPtasEngine:
    """
    k versus (1+ε)k gap test for strings whose length-ℓ windows all have
    period above 2k.

    Unique anchors split X and Y into phrases so that, with probability at
    least 1-δ, ED(X,Y) is the sum of the phrase distances; the sum is then
    estimated from random indicator terms [ED(X_i,Y_i) > j].
    """

    def __init__(self, rates: Optional[RateConfig] = None):
        self.rates = rates or RateConfig.from_settings()
        self.DELTA = settings.PTAS_DELTA

    def decompose(
        self,
        x_str: StringView,
        y_str: StringView,
        k: int,
        ell: int,
        delta: float,
        seed: Union[int, str, SeedStream, None] = 0,
    ) -> Decomposition:
        """
        Cut X at anchors offset, offset+q, ... and each Y at the unique match of
        the anchor window within ±k.

        The offset is drawn from [1..q] rather than [0..q): the anchor residues
        mod q are distributed the same way and X_0 is never empty.
        """
        if not 0 < delta < 1:
            raise ParameterError(f"δ must lie in (0, 1), got {delta}")
        if ell < 1 or k < 0:
            raise ParameterError(f"decompose needs ℓ >= 1 and k >= 0, got ℓ={ell}, k={k}")
        stream = as_stream(seed, "decompose")
        block = math.ceil((k + 1) * ell / delta)
        x_len, y_len = len(x_str), len(y_str)
        if x_len <= block:
            return Decomposition(x_bounds=[0, x_len], y_bounds=[0, y_len], block=block, window=ell)

        offset = stream.integer(1, block + 1)
        # anchors need a full window; the last phrase absorbs the tail
        anchors = list(range(offset, x_len - ell + 1, block))
        y_anchors = []
        for x_i in anchors:
            pattern = x_str.read(x_i, x_i + ell)
            lo = x_i - k
            hits = find_occurrences(pattern, y_str.read(lo, x_i + k + ell))
            if not hits:
                logger.debug(f"Anchor at {x_i} has no occurrence within ±{k}; falling back to Y_0 = Y")
                return Decomposition(
                    x_bounds=[0] + anchors + [x_len],
                    y_bounds=[0] + [y_len] * (len(anchors) + 1),
                    block=block,
                    window=ell,
                    failed=True,
                )
            if len(hits) > 1:
                raise ContractError(
                    f"anchor X[{x_i}..{x_i + ell}) occurs {len(hits)} times within ±{k}; "
                    f"the window is not aperiodic"
                )
            y_anchors.append(lo + hits[0])
        return Decomposition(
            x_bounds=[0] + anchors + [x_len], y_bounds=[0] + y_anchors + [y_len], block=block, window=ell,
        )

    def phrase_distance_or_cert(
        self,
        x_i: Fragment,
        y_i: Fragment,
        k: int,
        seed: Union[int, str, SeedStream, None] = 0,
        rates: Optional[RateConfig] = None,
        n: Optional[int] = None,
        cap: Optional[int] = None,
    ) -> PhraseDistance:
        """Certify ED <= k by sampling, otherwise compute it exactly up to cap"""
        rates = rates or self.rates
        stream = as_stream(seed, "phrase")
        n = n if n is not None else len(x_i) + len(y_i)
        if len(x_i) == len(y_i):
            certified = True
            for s in iter_sample(0, len(x_i), rates.rate(n, k), stream):
                if x_i.probe(s) != y_i.probe(s):
                    certified = False
                    break
            if certified:
                return PhraseDistance(outcome=PhraseOutcome.CERTIFIED)
        budget = cap if cap is not None else len(x_i) + len(y_i)
        distance = bounded_edit_distance(x_i, y_i, budget)
        if distance is None:
            return PhraseDistance(outcome=PhraseOutcome.EXCEEDED)
        return PhraseDistance(outcome=PhraseOutcome.EXACT, distance=distance)

    def estimate_sum(
        self,
        x_str: StringView,
        y_str: StringView,
        decomposition: Decomposition,
        k: int,
        epsilon: float,
        seed: Union[int, str, SeedStream, None] = 0,
        rates: Optional[RateConfig] = None,
    ) -> SumEstimate:
        """YES if Σ ED(X_i,Y_i) <= k, NO if it is at least (1+ε)k"""
        if not 0 < epsilon < 1:
            raise ParameterError(f"ε must lie in (0, 1), got {epsilon}")
        rates = rates or self.rates
        stream = as_stream(seed, "estimate-sum")
        phrases = decomposition.phrases(x_str, y_str)
        sizes = decomposition.phrase_sizes()
        total = sum(sizes)

        if k == 0:
            equal = all(
                len(x_i) == len(y_i) and self._all_equal(x_i, y_i) for x_i, y_i in phrases
            )
            return SumEstimate(draws=0, threshold=0.0, exhaustive=True, answer=equal)

        draws = rates.draw_count(total, k, epsilon)
        if total == 0 or draws >= total:
            return self._exhaustive_sum(phrases, k, epsilon, draws)

        threshold = (1 + epsilon / 2) * draws * k / total
        cumulative = np.cumsum(sizes).tolist()
        expected_cost = draws * sum(len(x_i) * _harmonic(size) for (x_i, _), size in zip(phrases, sizes)) / total

        for attempt in range(rates.repetitions(total)):
            run = stream.split(f"attempt-{attempt}")
            estimate = SumEstimate(draws=draws, threshold=threshold, restarts=attempt)
            cost = 0.0
            restarted = False
            for t in range(draws):
                term = run.integer(0, total)
                i = bisect.bisect_right(cumulative, term)
                j = term - (cumulative[i] - sizes[i])
                if i in estimate.memo:
                    estimate.indicator_sum += int(estimate.memo[i] > j)
                    continue
                x_i, y_i = phrases[i]
                outcome = self.phrase_distance_or_cert(
                    x_i, y_i, j, run.split(f"phrase-{t}"), rates, n=total, cap=k,
                )
                cost += len(x_i) / (j + 1)
                if outcome.outcome == PhraseOutcome.EXCEEDED:
                    estimate.answer = False
                    return estimate
                if outcome.outcome == PhraseOutcome.EXACT:
                    estimate.memo[i] = outcome.distance
                    estimate.indicator_sum += int(outcome.distance > j)
                    if sum(estimate.memo.values()) > k:
                        estimate.answer = False
                        return estimate
                if cost > 2 * expected_cost:
                    logger.warning(f"estimate_sum cost {cost:.1f} exceeds twice its expectation; restarting")
                    restarted = True
                    break
            if not restarted:
                estimate.answer = estimate.indicator_sum <= threshold
                return estimate
        raise UnluckyRunError(f"estimate_sum restarted {rates.repetitions(total)} times")

    def gap_ptas(
        self,
        x_str: StringView,
        y_str: StringView,
        k: int,
        ell: int,
        epsilon: float,
        seed: Union[int, str, SeedStream, None] = 0,
        rates: Optional[RateConfig] = None,
        verify: bool = False,
        delta: Optional[float] = None,
    ) -> GapVerdict:
        if k < 0:
            raise ParameterError(f"k must be non-negative, got {k}")
        rates = rates or self.rates
        delta = delta if delta is not None else self.DELTA
        stream = as_stream(seed, "gap-ptas")
        started = time.perf_counter()
        before = (x_str.counter.value, y_str.counter.value)

        if verify:
            violation = check_aperiodicity(x_str, ell, k)
            if violation is not None:
                raise ContractError(f"X[{violation}..{violation + ell}) has period at most {2 * k}")

        n = len(x_str) + len(y_str)
        iterations = rates.repetitions(n)
        verdict = Verdict.REJECT
        used = 0
        for iteration in range(iterations):
            used += 1
            decomposition = self.decompose(x_str, y_str, k, ell, delta, stream.split(f"decompose-{iteration}"))
            estimate = self.estimate_sum(
                x_str, y_str, decomposition, k, epsilon, stream.split(f"estimate-{iteration}"), rates,
            )
            logger.debug(
                f"gap_ptas iteration {iteration}: {decomposition.phrase_count} phrases, "
                f"failed={decomposition.failed}, answer={estimate.answer}"
            )
            if estimate.answer:
                verdict = Verdict.ACCEPT
                break

        probes_x = x_str.counter.value - before[0]
        probes_y = y_str.counter.value - before[1]
        result = GapVerdict(
            verdict=verdict,
            mode=GapMode.PTAS,
            k=k,
            probes=probes_x if x_str.counter is y_str.counter else probes_x + probes_y,
            probes_x=probes_x,
            probes_y=probes_y,
            wall_time_ms=(time.perf_counter() - started) * 1000,
            details={"window": ell, "epsilon": epsilon, "delta": delta, "iterations": used},
        )
        logger.info(f"gap_ptas k={k} ℓ={ell} ε={epsilon}: {verdict.value} after {used} iterations")
        return result

    def _all_equal(self, x_i: Fragment, y_i: Fragment) -> bool:
        return all(a == b for a, b in zip(x_i.read(0, len(x_i)), y_i.read(0, len(y_i))))

    def _exhaustive_sum(self, phrases, k: int, epsilon: float, draws: int) -> SumEstimate:
        """Exact phrase distances, aborting once their sum passes k"""
        estimate = SumEstimate(draws=draws, threshold=(1 + epsilon / 2) * k, exhaustive=True)
        remaining = k
        for index, (x_i, y_i) in enumerate(phrases):
            distance = bounded_edit_distance(x_i, y_i, remaining)
            if distance is None:
                estimate.answer = False
                return estimate
            if distance:
                estimate.memo[index] = distance
            remaining -= distance
        estimate.indicator_sum = k - remaining
        estimate.answer = estimate.indicator_sum <= estimate.threshold
        return estimate


# Global aperiodic PTAS engine instance
ptas_engine = AperiodicPtasEngine()
