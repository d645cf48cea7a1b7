"""
Randomized LCE with an exponential tail (bar-LCE_r) and the anchored index
that answers it for a whole range of shifts at once.

bar-LCE_r(0, j) is never below LCE_0(0, j), and exceeds LCE_k(0, j) with
probability at most exp(-(k+1)/r) for every k. It is composable over a split
of X when the two halves use independent randomness.
"""
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional
import logging

import numpy as np

from ..exceptions import ContractError, ParameterError
from ..models.string_models import OUT_OF_BOUNDS, SEPARATOR, Fragment, StringView
from ..models.tester_models import BarLceParams
from .randomness import SeedStream, iter_sample
from .strings import find_occurrences, period_of, z_function

logger = logging.getLogger(__name__)


def _as_fragment(view: StringView) -> Fragment:
    return view if isinstance(view, Fragment) else view.whole()


def _read_clipped(view: StringView, lo: int, hi: int) -> List:
    """Read [lo..hi), probing only positions inside the view"""
    inner_lo, inner_hi = max(lo, 0), min(hi, len(view))
    if inner_lo >= inner_hi:
        return [OUT_OF_BOUNDS] * max(0, hi - lo)
    return (
        [OUT_OF_BOUNDS] * (inner_lo - lo)
        + view.read(inner_lo, inner_hi)
        + [OUT_OF_BOUNDS] * (hi - inner_hi)
    )


def bar_lce_single(x_str: StringView, y_str: StringView, r: float, j: int, stream: SeedStream) -> int:
    """Sample each position with probability 1/r and stop at the first sampled mismatch"""
    if r <= 0:
        raise ParameterError(f"bar-LCE scale r must be positive, got {r}")
    if not 0 <= j <= len(y_str):
        return 0
    limit = min(len(x_str), len(y_str) - j)
    if r <= 1:
        length = 0
        while length < limit and x_str.probe(length) == y_str.probe(j + length):
            length += 1
        return length
    for s in iter_sample(0, limit, 1.0 / r, stream):
        if x_str.probe(s) != y_str.probe(j + s):
            return s
    return limit


def compose_bar_lce(first: int, second: int, split: int) -> int:
    """Answer on X·X' from answers on X and on X' shifted by |X|"""
    return first if first < split else split + second


def _bar_lce_against_period(t: Fragment, head: List, period: int, r: float, stream: SeedStream) -> int:
    """bar-LCE_r of t against its own periodic extension t'[i] = t[i mod p]"""
    known = len(head)  # t[0..2q) is compatible by definition of the period
    if r <= 1:
        position = known
        while position < len(t) and t.probe(position) == head[position % period]:
            position += 1
        return position
    for s in iter_sample(0, len(t), 1.0 / r, stream):
        if s < known:
            continue
        if t.probe(s) != head[s % period]:
            return s
    return len(t)


def find_break2(t: StringView, r: float, q: int, stream: SeedStream) -> int:
    """
    ℓ in [2q..|t|] with ℓ = |t| or per(t(ℓ-2q..ℓ]) > q; ℓ is a bar-LCE_r of t
    against its periodic extension. Requires per(t[0..2q)) <= q.
    """
    t = _as_fragment(t)
    if not 1 <= q <= len(t) // 2:
        raise ContractError(f"find_break2 needs 1 <= q <= |t|/2, got q={q}, |t|={len(t)}")
    head = t.read(0, 2 * q)
    period = period_of(head)
    if period > q:
        raise ContractError(f"find_break2 needs per(t[0..2q)) <= q, got period {period} for q={q}")

    reach = _bar_lce_against_period(t, head, period, r, stream)
    if reach == len(t):
        return len(t)
    begin, end = 2 * q, reach
    while begin < end:
        middle = (begin + end + 1) // 2
        window = t.read(middle - 2 * q, middle)
        for offset, symbol in enumerate(window):
            j = middle - 2 * q + offset
            if symbol != head[j % period]:
                end = j
        if end >= middle:
            begin = middle
    return begin


def batch_bar_lce(x_str: StringView, y_str: StringView, r: float, J: range, stream: SeedStream) -> Dict[int, int]:
    """bar-LCE_r(0, j) for every j in J, sharing work between shifts"""
    if len(J) == 0 or J.step != 1:
        raise ParameterError(f"batch needs a nonempty contiguous J, got {J}")
    j_min, j_max = J.start, J[-1]
    delta = j_max - j_min

    # ℓ_j = min(LCE_0(0, j), 2Δ) from the PREF table of X[0..2Δ) $ Y[min J..max J+2Δ)
    aux = _read_clipped(x_str, 0, 2 * delta) + [SEPARATOR] + _read_clipped(y_str, j_min, j_max + 2 * delta)
    pref = z_function(aux)
    values = {j: min(pref[2 * delta + 1 + j - j_min], 2 * delta) for j in J}

    candidates = [j for j in J if values[j] == 2 * delta]
    if len(candidates) <= 1:
        for j in candidates:
            values[j] = bar_lce_single(x_str, y_str, r, j, stream.split(f"single-{j}"))
        return values

    x_len, y_len = len(x_str), len(y_str)
    c_min, c_max = candidates[0], candidates[-1]
    reach_x = find_break2(x_str, r, delta, stream.split("break-x"))
    y_bar = _as_fragment(y_str).fragment(c_min, min(c_max + x_len, y_len))
    reach_y = find_break2(y_bar, r, delta, stream.split("break-y"))
    for j in candidates:
        values[j] = min(reach_x, reach_y - j + c_min)

    def needs_fallback(j: int) -> bool:
        return j in values and values[j] < min(x_len, y_len - j)

    recompute = []
    if reach_x < x_len:
        # ℓ_j = ℓ^X: X(ℓ^X-2Δ..ℓ^X] reappears at Y(j+ℓ^X-2Δ..j+ℓ^X]
        pattern = x_str.read(reach_x - 2 * delta + 1, reach_x + 1)
        lo = c_min + reach_x - 2 * delta + 1
        window = _read_clipped(y_str, lo, c_max + reach_x + 1)
        for o in find_occurrences(pattern, window):
            j = lo + o - reach_x + 2 * delta - 1
            if c_min <= j <= c_max and values[j] == reach_x and needs_fallback(j):
                recompute.append(j)
                break
    if reach_y < len(y_bar):
        # ℓ_j = ℓ^Y - j + min C: Y-bar(ℓ^Y-2Δ..ℓ^Y] reappears at X(ℓ_j-2Δ..ℓ_j]
        pattern = y_bar.read(reach_y - 2 * delta + 1, reach_y + 1)
        lo = reach_y - (c_max - c_min) - 2 * delta + 1
        window = _read_clipped(x_str, lo, reach_y + 1)
        for o in find_occurrences(pattern, window):
            j = reach_y + c_min - 2 * delta + 1 - (lo + o)
            if c_min <= j <= c_max and values[j] != reach_x and needs_fallback(j) and j not in recompute:
                recompute.append(j)
                break
    for j in recompute:
        values[j] = bar_lce_single(x_str, y_str, r, j, stream.split(f"fallback-{j}"))
    return values


@dataclass
class LceIndex:
    """
    bar-LCE_r(x, x+δ) for δ in Δ, stored at anchors x ≡ |X| (mod q).

    Row t of ``grid`` belongs to anchor |X| - t·q; queries between anchors
    run one fresh batch up to the next anchor and compose.
    """

    x_str: StringView
    y_str: StringView
    delta: range
    params: BarLceParams
    q: int
    grid: np.ndarray = field(repr=False)

    @property
    def x_len(self) -> int:
        return len(self.x_str)

    @property
    def anchors(self) -> List[int]:
        return [self.x_len - t * self.q for t in range(self.grid.shape[0])]

    def row(self, anchor: int) -> np.ndarray:
        t, rest = divmod(self.x_len - anchor, self.q)
        if rest or not 0 <= t < self.grid.shape[0]:
            raise ParameterError(f"{anchor} is not an anchor of this index")
        return self.grid[t]


def _segment_row(
    x_str: StringView, y_str: StringView, r: float, delta: range, x: int, end: int,
    tail: np.ndarray, stream: SeedStream,
) -> np.ndarray:
    segment = _as_fragment(x_str).fragment(x, end)
    shifts = range(x + delta.start, x + delta.stop)
    answers = batch_bar_lce(segment, y_str, r, shifts, stream)
    width = end - x
    return np.array(
        [compose_bar_lce(answers[x + d], int(tail[t]), width) for t, d in enumerate(delta)],
        dtype=np.int64,
    )


def build_lce_index(x_str: StringView, y_str: StringView, r: float, delta: range, stream: SeedStream) -> LceIndex:
    if r <= 0:
        raise ParameterError(f"bar-LCE scale r must be positive, got {r}")
    if len(delta) == 0 or delta.step != 1:
        raise ParameterError(f"index needs a nonempty contiguous Δ, got {delta}")
    q = max(1, math.ceil(r * len(delta)))
    rows = [np.zeros(len(delta), dtype=np.int64)]
    x = len(x_str)
    while x >= q:
        x -= q
        rows.append(_segment_row(x_str, y_str, r, delta, x, x + q, rows[-1], stream.split(f"segment-{x}")))
    logger.debug(f"Built LCE index over Δ=[{delta.start}..{delta.stop}) with q={q}, {len(rows)} anchors")
    return LceIndex(
        x_str=x_str, y_str=y_str, delta=delta, params=BarLceParams(r=r), q=q, grid=np.vstack(rows),
    )


def query_lce_index(idx: LceIndex, x: int, stream: SeedStream) -> Dict[int, int]:
    """bar-LCE_r(x, x+δ) for every δ in Δ"""
    if not 0 <= x <= idx.x_len:
        return {d: 0 for d in idx.delta}
    anchor = x + (idx.x_len - x) % idx.q
    stored = idx.row(anchor)
    if anchor == x:
        return {d: int(value) for d, value in zip(idx.delta, stored)}
    row = _segment_row(idx.x_str, idx.y_str, idx.params.r, idx.delta, x, anchor, stored, stream)
    return {d: int(value) for d, value in zip(idx.delta, row)}
