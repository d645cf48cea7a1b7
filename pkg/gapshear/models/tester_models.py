import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..config import settings
from ..exceptions import ParameterError
from .string_models import Fragment, PeriodInfo, StringView, Symbol

# Walk and embedding acceptance constant, from 12k/sqrt(N) <= 1/3 in the walk analysis
WALK_THRESHOLD_FACTOR = 1296


def log_n(n: int) -> float:
    """Natural log guarded so that tiny inputs never produce rates of zero"""
    return math.log(max(n, 2))


class Verdict(str, Enum):
    ACCEPT = "ACCEPT"
    REJECT = "REJECT"


class GapMode(str, Enum):
    QUADRATIC = "quadratic"
    ALPHA = "alpha"
    PTAS = "ptas"
    WALK = "walk"


class RateConfig(BaseModel):
    """Constants behind every Θ̃(1/(k+1)) sampling rate"""

    hp_constant: float = Field(default=3.0, gt=0, description="c in c·λ·ln n/(k+1)")
    failure_exponent: float = Field(default=1.0, gt=0, description="λ, failure probability n^(-λ)")

    @classmethod
    def from_settings(cls) -> "RateConfig":
        return cls(hp_constant=settings.RATE_C, failure_exponent=settings.FAILURE_EXPONENT)

    def rate(self, n: int, k: int) -> float:
        return min(1.0, self.hp_constant * self.failure_exponent * log_n(n) / (k + 1))

    def bar_lce_scale(self, n: int, k: int) -> float:
        """r such that bar-LCE_r meets the apLCE_k contract with probability 1 - n^(-cλ)"""
        return (k + 1) / (self.hp_constant * self.failure_exponent * log_n(n))

    def repetitions(self, n: int) -> int:
        """Restart cap and iteration count: ⌈λ·log₂ n⌉ + 1"""
        return math.ceil(self.failure_exponent * math.log2(max(n, 2))) + 1

    def draw_count(self, n: int, k: int, epsilon: float) -> int:
        draws = math.ceil(self.hp_constant * self.failure_exponent * n * log_n(n) / (epsilon ** 2 * max(k, 1)))
        return min(draws, n)


class SampleSet(BaseModel):
    lo: int
    hi: int
    rate: float
    indices: List[int] = []

    @model_validator(mode="after")
    def _check_indices(self) -> "SampleSet":
        previous = self.lo - 1
        for index in self.indices:
            if index <= previous or index >= self.hi:
                raise ParameterError(f"sample index {index} breaks ordering or range [{self.lo}..{self.hi})")
            previous = index
        return self

    def __len__(self) -> int:
        return len(self.indices)


class BarLceParams(BaseModel):
    r: float = Field(gt=0)

    @classmethod
    def for_budget(cls, n: int, k: int, rates: RateConfig) -> "BarLceParams":
        return cls(r=rates.bar_lce_scale(n, k))

    @property
    def is_exact(self) -> bool:
        return self.r <= 1


class LceQuery(BaseModel):
    i: int
    j_lo: int
    j_hi: int  # inclusive
    k: int = Field(ge=0)

    @classmethod
    def around(cls, i: int, k: int) -> "LceQuery":
        return cls(i=i, j_lo=i - k, j_hi=i + k, k=k)

    @property
    def j_range(self) -> range:
        return range(self.j_lo, self.j_hi + 1)


@dataclass(frozen=True)
class BreakOutcome:
    """Either a length-2q break of T or a certificate that T is almost p-periodic"""

    period: Optional[PeriodInfo] = None
    fragment: Optional[Fragment] = None
    start: int = 0  # position of the break inside the searched fragment
    symbols: Tuple[Symbol, ...] = field(default=(), repr=False)

    @property
    def is_break(self) -> bool:
        return self.fragment is not None


class FrontierRound(BaseModel):
    i: int
    d_prime: int
    d: int


class GreedyFrontier(BaseModel):
    rounds: List[FrontierRound] = []

    def is_monotone(self, x_len: int) -> bool:
        previous = 0
        for row in self.rounds:
            if not previous <= row.d_prime <= row.d <= x_len:
                return False
            previous = row.d
        return True


class WideFrontier(BaseModel):
    alpha: int
    b: int
    j_lo: int
    j_hi: int
    # d_{i,j} per round; unreachable diagonals are absent
    rows: List[Dict[int, int]] = []


class GapVerdict(BaseModel):
    verdict: Verdict
    mode: GapMode
    k: int
    probes: int = 0
    probes_x: int = 0
    probes_y: int = 0
    wall_time_ms: float = 0.0
    frontier: Optional[Union[GreedyFrontier, WideFrontier]] = None
    details: Dict[str, Union[int, float, str, None]] = {}

    @property
    def accepted(self) -> bool:
        return self.verdict == Verdict.ACCEPT


class AperiodicityParams(BaseModel):
    window: int = Field(gt=0)
    k: int = Field(ge=0)

    @property
    def max_forbidden_period(self) -> int:
        return 2 * self.k


class Decomposition(BaseModel):
    """
    Phrase boundaries for X = X_0 X_1 ... and Y = Y_0 Y_1 ....

    Inner X-phrases are at most `block` long. The last one may reach
    block + window - 1: anchors need a full window inside X, so a tail shorter
    than the window joins the last phrase.
    """

    x_bounds: List[int]
    y_bounds: List[int]
    block: int
    window: int = 1
    failed: bool = False

    @model_validator(mode="after")
    def _check_bounds(self) -> "Decomposition":
        if len(self.x_bounds) != len(self.y_bounds) or len(self.x_bounds) < 2:
            raise ParameterError("decomposition bounds must pair up and hold at least one phrase")
        if self.x_bounds[0] != 0 or self.y_bounds[0] != 0:
            raise ParameterError("decomposition must start at 0")
        # the trivial split of an empty X is [0, 0]
        if len(self.x_bounds) > 2 and any(b <= a for a, b in zip(self.x_bounds, self.x_bounds[1:])):
            raise ParameterError(f"x bounds not strictly increasing: {self.x_bounds}")
        if self.x_bounds[-1] < self.x_bounds[0]:
            raise ParameterError(f"x bounds decreasing: {self.x_bounds}")
        if any(b < a for a, b in zip(self.y_bounds, self.y_bounds[1:])):
            raise ParameterError(f"y bounds decreasing: {self.y_bounds}")
        lengths = [b - a for a, b in zip(self.x_bounds, self.x_bounds[1:])]
        if any(length > self.block for length in lengths[:-1]) or lengths[-1] > self.block + self.window - 1:
            raise ParameterError(f"phrase longer than block {self.block}")
        return self

    @property
    def phrase_count(self) -> int:
        return len(self.x_bounds) - 1

    def phrases(self, x: StringView, y: StringView) -> List[Tuple[Fragment, Fragment]]:
        x_whole = x if isinstance(x, Fragment) else x.whole()
        y_whole = y if isinstance(y, Fragment) else y.whole()
        return [
            (x_whole.fragment(x0, x1), y_whole.fragment(y0, y1))
            for x0, x1, y0, y1 in zip(self.x_bounds, self.x_bounds[1:], self.y_bounds, self.y_bounds[1:])
        ]

    def phrase_sizes(self) -> List[int]:
        return [
            (x1 - x0) + (y1 - y0)
            for x0, x1, y0, y1 in zip(self.x_bounds, self.x_bounds[1:], self.y_bounds, self.y_bounds[1:])
        ]


class PhraseOutcome(str, Enum):
    CERTIFIED = "certified"
    EXACT = "exact"
    EXCEEDED = "exceeded"


class PhraseDistance(BaseModel):
    outcome: PhraseOutcome
    distance: Optional[int] = None


class SumEstimate(BaseModel):
    draws: int
    threshold: float
    exhaustive: bool = False
    indicator_sum: int = 0
    restarts: int = 0
    memo: Dict[int, int] = {}
    answer: Optional[bool] = None


class WalkParams(BaseModel):
    k: int = Field(ge=0)
    p: int = Field(gt=0)
    n: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_window(self) -> "WalkParams":
        floor = 2 * log_n(self.n)
        if self.p < floor or self.p > max(self.n, 2):
            raise ParameterError(f"p={self.p} outside [2 ln n..n] = [{floor:.2f}..{max(self.n, 2)}]")
        return self

    @property
    def rate(self) -> float:
        return min(1.0, 2 * log_n(self.n) / self.p)

    @property
    def threshold(self) -> int:
        return WALK_THRESHOLD_FACTOR * self.k * self.k


class WalkTrace(BaseModel):
    c: int = Field(ge=0)
    final_x: int
    final_y: int
    x_len: int
    y_len: int
    threshold: int
    iterations: int = 0

    @property
    def leftover(self) -> int:
        return max(self.x_len - self.final_x, self.y_len - self.final_y)

    @property
    def accepted(self) -> bool:
        return self.c + self.leftover <= self.threshold


class SharedRandomness(BaseModel):
    """Sampled iterations S ⊆ [1..3n] and one hash per sample"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int
    p: int
    seed: int
    binary: bool = True
    s_set: np.ndarray
    # binary mode: flip bit per sample; extended mode: (|S|, 256) table of outputs
    hashes: np.ndarray

    @field_validator("s_set")
    @classmethod
    def _check_s_set(cls, value: np.ndarray) -> np.ndarray:
        if value.size and (np.any(np.diff(value) <= 0) or value[0] < 1):
            raise ParameterError("sample set must be strictly increasing and 1-based")
        return value

    @model_validator(mode="after")
    def _check_sizes(self) -> "SharedRandomness":
        if self.s_set.size and self.s_set[-1] > 3 * self.n:
            raise ParameterError(f"sample index {self.s_set[-1]} beyond 3n = {3 * self.n}")
        if self.hashes.shape[0] != self.s_set.size:
            raise ParameterError("one hash per sampled index required")
        return self

    @property
    def size(self) -> int:
        return int(self.s_set.size)

    def advance(self, j: int, symbol: int) -> int:
        """h_j(symbol) in {0, 1}"""
        if self.binary:
            if symbol not in (48, 49):
                raise ParameterError(f"binary embedding met symbol {symbol!r}; expected b'0' or b'1'")
            return (symbol - 48) ^ int(self.hashes[j])
        return int(self.hashes[j, symbol])


class Embedding(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    output: bytes
    randomness: SharedRandomness

    def __len__(self) -> int:
        return len(self.output)


class DistortionStats(BaseModel):
    trials: int
    edit_distance: int
    p: int
    lower_bound: float
    upper_bound: int
    lower_frequency: float
    upper_frequency: float
    joint_frequency: float
    mean_hamming: float
    hamming_histogram: Dict[int, int] = {}
