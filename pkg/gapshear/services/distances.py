from typing import Dict, Iterator, List, Optional
import logging

import numpy as np

from ..models.string_models import StringView
from ..models.tester_models import Verdict

logger = logging.getLogger(__name__)


def _dp_distance(a: bytes, b: bytes, substitution_cost: int) -> int:
    """Quadratic DP, one numpy row per character of a"""
    if not a:
        return len(b)
    if not b:
        return len(a)
    b_arr = np.frombuffer(b, dtype=np.uint8)
    offsets = np.arange(len(b) + 1, dtype=np.int64)
    previous = offsets.copy()
    for i, symbol in enumerate(a, start=1):
        current = np.empty_like(previous)
        current[0] = i
        diagonal = previous[:-1] + substitution_cost * (b_arr != symbol)
        current[1:] = np.minimum(previous[1:] + 1, diagonal)
        # insertions along the row: current[j] = min_{t<=j} current[t] + (j - t)
        previous = offsets + np.minimum.accumulate(current - offsets)
    return int(previous[-1])


def edit_distance_full(x_str: StringView, y_str: StringView) -> int:
    """Exact edit distance on uninstrumented data"""
    return _dp_distance(x_str.tobytes(), y_str.tobytes(), 1)


def indel_distance(x_str: StringView, y_str: StringView) -> int:
    return _dp_distance(x_str.tobytes(), y_str.tobytes(), 2)


def _extend(x: StringView, y: StringView, x_pos: int, y_pos: int) -> int:
    """Exact LCE_0 by probing; out-of-bounds reads end the scan"""
    length = 0
    while x.probe(x_pos + length) == y.probe(y_pos + length):
        length += 1
    return length


def _lv_rounds(x: StringView, y: StringView, k: int) -> Iterator[Dict[int, int]]:
    """
    Landau-Vishkin rows d_{i,.} for i = 0..k.

    d_{i,j} is the furthest x such that X[0..x) aligns with Y[0..x+j) using at
    most i edits; unreachable diagonals are absent from the row.
    """
    x_len = len(x)
    starts = {0: 0}
    for _ in range(k + 1):
        row = {j: start + _extend(x, y, start, start + j) for j, start in starts.items()}
        yield row
        starts = {}
        for j in range(-k, k + 1):
            candidates = []
            if j - 1 in row:
                candidates.append(row[j - 1])
            if j in row:
                candidates.append(row[j] + 1)
            if j + 1 in row:
                candidates.append(row[j + 1] + 1)
            if candidates:
                starts[j] = min(x_len, max(candidates))


def bounded_edit_distance(x: StringView, y: StringView, budget: int) -> Optional[int]:
    """Exact ED if it is at most budget, else None"""
    target = len(y) - len(x)
    if abs(target) > budget:
        return None
    for i, row in enumerate(_lv_rounds(x, y, budget)):
        if row.get(target) == len(x):
            return i
    return None


def landau_vishkin(x_str: StringView, y_str: StringView, k: int) -> Verdict:
    distance = bounded_edit_distance(x_str, y_str, k)
    return Verdict.ACCEPT if distance is not None else Verdict.REJECT


def landau_vishkin_frontier(x_str: StringView, y_str: StringView, k: int) -> List[Dict[int, int]]:
    """All k+1 rows of the d-table, for parity checks against the wide-diagonal tester"""
    return list(_lv_rounds(x_str, y_str, k))
