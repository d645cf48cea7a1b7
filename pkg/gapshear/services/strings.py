"""
Exact combinatorial primitives on probe-counted strings.

The symbol-level helpers work on lists already read from a Text, so each
character is paid for exactly once; the public operations take views.
"""
from typing import List, Sequence

from ..exceptions import ParameterError
from ..models.string_models import PeriodInfo, StringView, Symbol, Text


def failure_function(symbols: Sequence[Symbol]) -> List[int]:
    """Morris-Pratt border table: fail[i] = longest proper border of symbols[0..i]"""
    fail = [0] * len(symbols)
    border = 0
    for i in range(1, len(symbols)):
        while border and symbols[i] != symbols[border]:
            border = fail[border - 1]
        if symbols[i] == symbols[border]:
            border += 1
        fail[i] = border
    return fail


def period_of(symbols: Sequence[Symbol]) -> int:
    if not symbols:
        raise ParameterError("the empty string has no period")
    return len(symbols) - failure_function(symbols)[-1]


def find_occurrences(pattern: Sequence[Symbol], window: Sequence[Symbol]) -> List[int]:
    if not pattern:
        raise ParameterError("pattern must be nonempty")
    m = len(pattern)
    fail = failure_function(pattern)
    found = []
    matched = 0
    for pos, symbol in enumerate(window):
        while matched and symbol != pattern[matched]:
            matched = fail[matched - 1]
        if symbol == pattern[matched]:
            matched += 1
            if matched == m:
                found.append(pos - m + 1)
                matched = fail[matched - 1]
    return found


def z_function(symbols: Sequence[Symbol]) -> List[int]:
    """PREF table of length |t|+1 with PREF[0] = |t| and PREF[|t|] = 0"""
    n = len(symbols)
    z = [0] * (n + 1)
    z[0] = n
    left = right = 0
    for i in range(1, n):
        if i < right:
            z[i] = min(right - i, z[i - left])
        while i + z[i] < n and symbols[z[i]] == symbols[i + z[i]]:
            z[i] += 1
        if i + z[i] > right:
            left, right = i, i + z[i]
    return z


def shortest_period(s: StringView) -> int:
    """per(s), reading s once"""
    if len(s) == 0:
        raise ParameterError("shortest_period of an empty fragment")
    return period_of(s.read(0, len(s)))


def period_info(s: StringView) -> PeriodInfo:
    return PeriodInfo(period=shortest_period(s), prefix_len=len(s))


def occurrences(pattern: StringView, window: StringView) -> List[int]:
    if len(pattern) == 0:
        raise ParameterError("occurrences needs a nonempty pattern")
    return find_occurrences(pattern.read(0, len(pattern)), window.read(0, len(window)))


def pref_table(t: StringView) -> List[int]:
    return z_function(t.read(0, len(t)))


def lce_exact(x_str: Text, y_str: Text, k: int, x: int, y: int) -> int:
    """Exact LCE_k on uninstrumented data; the oracle for the approximate notions"""
    xs, ys = x_str.tobytes(), y_str.tobytes()
    if not 0 <= x <= len(xs) or not 0 <= y <= len(ys):
        return 0
    limit = min(len(xs) - x, len(ys) - y)
    mismatches = 0
    for offset in range(limit):
        if xs[x + offset] != ys[y + offset]:
            mismatches += 1
            if mismatches > k:
                return offset
    return limit


def hamming_distance(a: bytes, b: bytes) -> int:
    if len(a) != len(b):
        raise ParameterError(f"hamming distance of lengths {len(a)} and {len(b)}")
    return sum(1 for u, v in zip(a, b) if u != v)
