import math
import time
from typing import Dict, Optional, Tuple, Union
import logging

from ..exceptions import ContractError, ParameterError
from ..models.string_models import StringView
from ..models.tester_models import (
    FrontierRound, GapMode, GapVerdict, GreedyFrontier, LceQuery, RateConfig, Verdict, WideFrontier,
)
from .lce_approx import apx_lce_max
from .lce_batch import LceIndex, build_lce_index, query_lce_index
from .randomness import SeedStream, as_stream

logger = logging.getLogger(__name__)


def choose_block_parameter(n: int, k: int, alpha: int) -> int:
    """Balance k|X|/(α²b) against k²b, clamped to [1..⌈k/α⌉]"""
    if k < 0 or alpha < 1:
        raise ParameterError(f"block parameter needs k >= 0 and α >= 1, got k={k}, α={alpha}")
    budget = max(k, 1)
    raw = math.sqrt(n) / (alpha * math.sqrt(budget))
    return max(1, min(math.floor(raw + 0.5), math.ceil(budget / alpha)))


class GapTestingEngine:
    """
    Decision procedures for "ED(X,Y) <= k" against a far threshold.

    gap_quadratic separates k from (3k+5)k; gap_alpha separates k from
    k + 3(k+1)(α-1) by grouping α consecutive diagonals.
    """

    def __init__(self, rates: Optional[RateConfig] = None):
        self.rates = rates or RateConfig.from_settings()
        self.BACKENDS = ("index", "range-max")

    def far_threshold(self, k: int, alpha: Optional[int] = None) -> int:
        """Distance above which REJECT is guaranteed with high probability"""
        if alpha is None:
            return (3 * k + 5) * k
        return k + 3 * (k + 1) * (alpha - 1)

    def gap_quadratic(
        self,
        x_str: StringView,
        y_str: StringView,
        k: int,
        seed: Union[int, str, SeedStream, None] = 0,
        rates: Optional[RateConfig] = None,
    ) -> GapVerdict:
        """Greedy extension along k+1 rounds of approximate range-max LCE queries"""
        if k < 0:
            raise ParameterError(f"k must be non-negative, got {k}")
        rates = rates or self.rates
        stream = as_stream(seed, "gap-quadratic")
        started, before = time.perf_counter(), self._snapshot(x_str, y_str)

        x_len, y_len = len(x_str), len(y_str)
        frontier = GreedyFrontier()
        verdict = Verdict.REJECT
        if abs(x_len - y_len) <= k:
            n = x_len + y_len
            d_prime = d = 0
            for i in range(k + 1):
                query = LceQuery.around(d_prime, k)
                extension = apx_lce_max(
                    x_str, y_str, query.i, query.j_range, k, rates, stream.split(f"round-{i}"), n,
                )
                d = d_prime + extension
                frontier.rounds.append(FrontierRound(i=i, d_prime=d_prime, d=d))
                d_prime = min(x_len, d + 1)
            if not frontier.is_monotone(x_len):
                raise ContractError(f"greedy frontier lost monotonicity: {frontier.rounds}")
            if d == x_len:
                verdict = Verdict.ACCEPT

        result = self._finish(GapMode.QUADRATIC, verdict, k, x_str, y_str, started, before, frontier)
        logger.info(f"gap_quadratic k={k} |X|={x_len} |Y|={y_len}: {verdict.value}, {result.probes} probes")
        return result

    def gap_alpha(
        self,
        x_str: StringView,
        y_str: StringView,
        k: int,
        alpha: int,
        b: Optional[int] = None,
        seed: Union[int, str, SeedStream, None] = 0,
        rates: Optional[RateConfig] = None,
        exact: bool = False,
        backend: str = "index",
    ) -> GapVerdict:
        """Landau-Vishkin over groups of α diagonals with approximate LCE_{α-1} queries"""
        if k < 0:
            raise ParameterError(f"k must be non-negative, got {k}")
        if alpha < 1:
            raise ParameterError(f"α must be at least 1, got {alpha}")
        if b is not None and b < 1:
            raise ParameterError(f"block parameter b must be at least 1, got {b}")
        if backend not in self.BACKENDS:
            raise ParameterError(f"unknown backend {backend!r}, expected one of {self.BACKENDS}")
        rates = rates or self.rates
        stream = as_stream(seed, "gap-alpha")
        started, before = time.perf_counter(), self._snapshot(x_str, y_str)

        width = min(alpha, max(1, k))
        if width != alpha:
            logger.warning(f"α={alpha} exceeds max(1,k)={max(1, k)}; using α={width}")
        x_len, y_len = len(x_str), len(y_str)
        n = x_len + y_len
        block = b or choose_block_parameter(x_len, k, width)
        r = 1.0 if exact else rates.bar_lce_scale(n, width - 1)
        j_lo, j_hi = (-k) // width, k // width
        frontier = WideFrontier(alpha=width, b=block, j_lo=j_lo, j_hi=j_hi)

        verdict = Verdict.REJECT
        if abs(x_len - y_len) <= k:
            indices: Dict[int, LceIndex] = {}

            def group_extension(i: int, j: int, x_pos: int) -> int:
                shifts = range(j * width, (j + 1) * width)
                if backend == "range-max":
                    return apx_lce_max(
                        x_str, y_str, x_pos, range(x_pos + shifts.start, x_pos + shifts.stop),
                        width - 1, rates, stream.split(f"group-{i}-{j}"), n,
                    )
                instance = j // block
                if instance not in indices:
                    span = width * block
                    indices[instance] = build_lce_index(
                        x_str, y_str, r, range(instance * span, (instance + 1) * span),
                        stream.split(f"index-{instance}"),
                    )
                values = query_lce_index(indices[instance], x_pos, stream.split(f"query-{i}-{j}"))
                return max(values[d] for d in shifts)

            starts = {0: 0}
            row: Dict[int, int] = {}
            for i in range(k + 1):
                row = {j: start + group_extension(i, j, start) for j, start in sorted(starts.items())}
                frontier.rows.append(row)
                starts = self._next_starts(row, j_lo, j_hi, x_len)
                logger.debug(f"gap_alpha round {i}: {len(row)} reachable groups")

            if row.get((y_len - x_len) // width) == x_len:
                verdict = Verdict.ACCEPT

        result = self._finish(GapMode.ALPHA, verdict, k, x_str, y_str, started, before, frontier)
        result.details.update({"alpha": width, "b": block, "r": r, "backend": backend})
        logger.info(f"gap_alpha k={k} α={width} b={block}: {verdict.value}, {result.probes} probes")
        return result

    def _next_starts(self, row: Dict[int, int], j_lo: int, j_hi: int, x_len: int) -> Dict[int, int]:
        starts = {}
        for j in range(j_lo, j_hi + 1):
            candidates = []
            if j - 1 in row:
                candidates.append(row[j - 1])
            if j in row:
                candidates.append(row[j] + 1)
            if j + 1 in row:
                candidates.append(row[j + 1] + 1)
            if candidates:
                starts[j] = min(x_len, max(candidates))
        return starts

    def _snapshot(self, x_str: StringView, y_str: StringView) -> Tuple[int, int]:
        return x_str.counter.value, y_str.counter.value

    def _finish(
        self, mode: GapMode, verdict: Verdict, k: int, x_str: StringView, y_str: StringView,
        started: float, before: Tuple[int, int], frontier,
    ) -> GapVerdict:
        probes_x = x_str.counter.value - before[0]
        probes_y = y_str.counter.value - before[1]
        # X and Y may share one counter
        probes = probes_x if x_str.counter is y_str.counter else probes_x + probes_y
        return GapVerdict(
            verdict=verdict,
            mode=mode,
            k=k,
            probes=probes,
            probes_x=probes_x,
            probes_y=probes_y,
            wall_time_ms=(time.perf_counter() - started) * 1000,
            frontier=frontier,
        )


# Global gap testing engine instance
gap_engine = GapTestingEngine()
