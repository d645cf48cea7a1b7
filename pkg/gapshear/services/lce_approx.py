"""
Approximate LCE queries over a range of shifts.

apx_lce_max answers max_{j in J} apLCE_k(i, j) with an exponential then binary
search over a threshold oracle. The oracle prunes the candidate shifts with
exact matching of a short prefix and with breaks, short fragments that are
not periodic, so that at most one candidate survives unless both fragments
are almost periodic.
"""
from typing import List, Optional
import logging

from ..exceptions import ParameterError
from ..models.string_models import Fragment, PeriodInfo, StringView
from ..models.tester_models import BreakOutcome, RateConfig
from .randomness import SeedStream, iter_sample
from .strings import find_occurrences, period_of

logger = logging.getLogger(__name__)


def _as_fragment(view: StringView) -> Fragment:
    return view if isinstance(view, Fragment) else view.whole()


def _is_incompatible(symbol, head: List, period: int, position: int) -> bool:
    return symbol != head[position % period]


def find_break(
    t: StringView,
    q: int,
    k: int,
    rates: RateConfig,
    stream: SeedStream,
    n: Optional[int] = None,
) -> BreakOutcome:
    """
    Find a length-2q fragment of t with period above q, or certify that t
    has at most k positions incompatible with the period of t[0..2q).
    """
    t = _as_fragment(t)
    if not 1 <= q <= len(t) // 2:
        raise ParameterError(f"find_break needs 1 <= q <= |t|/2, got q={q}, |t|={len(t)}")
    n = n if n is not None else len(t)

    head = t.read(0, 2 * q)
    period = period_of(head)
    if period > q:
        return BreakOutcome(fragment=t.fragment(0, 2 * q), start=0, symbols=tuple(head))

    for s in iter_sample(0, len(t), rates.rate(n, k), stream):
        if not _is_incompatible(t.probe(s), head, period, s):
            continue
        begin, end = 2 * q, s
        while begin < end:
            middle = (begin + end + 1) // 2
            window = t.read(middle - 2 * q, middle)
            for offset, symbol in enumerate(window):
                j = middle - 2 * q + offset
                if _is_incompatible(symbol, head, period, j):
                    end = j
            if end >= middle:
                begin = middle
        start = begin - 2 * q + 1
        symbols = t.read(start, begin + 1)
        return BreakOutcome(fragment=t.fragment(start, begin + 1), start=start, symbols=tuple(symbols))

    return BreakOutcome(period=PeriodInfo(period=period, prefix_len=2 * q))


def gap_match_oracle(
    x_str: StringView,
    y_str: StringView,
    i: int,
    J: range,
    k: int,
    ell: int,
    rates: RateConfig,
    stream: SeedStream,
    n: Optional[int] = None,
) -> bool:
    """YES if X[i..i+ℓ) occurs in Y at a start in J; NO if every j in J has > k mismatches"""
    if ell <= 0 or not 0 <= i <= len(x_str) - ell:
        raise ParameterError(f"oracle needs ℓ > 0 and i in [0..|X|-ℓ], got i={i}, ℓ={ell}")
    if len(J) == 0 or J.step != 1 or J.start < 0 or J[-1] > len(y_str) - ell:
        raise ParameterError(f"oracle needs nonempty J inside [0..|Y|-ℓ], got {J}")
    n = n if n is not None else len(x_str) + len(y_str)
    size = len(J)
    j_min, j_max = J.start, J[-1]

    if ell < 3 * size:
        pattern = x_str.read(i, i + ell)
        return bool(find_occurrences(pattern, y_str.read(j_min, j_max + ell)))

    prefix = x_str.read(i, i + 3 * size)
    candidates = [
        j_min + o for o in find_occurrences(prefix, y_str.read(j_min, j_max + 3 * size))
    ]
    if not candidates:
        return False

    x_frag = _as_fragment(x_str).fragment(i, i + ell)
    c_min, c_max = candidates[0], candidates[-1]
    y_frag = _as_fragment(y_str).fragment(c_max, c_min + ell)
    break_x = find_break(x_frag, size, k // 2, rates, stream.split("break-x"), n)
    break_y = find_break(y_frag, size, k // 2, rates, stream.split("break-y"), n)
    if not break_x.is_break and not break_y.is_break:
        return True

    width = 2 * size
    if break_x.is_break:
        # B_X = X[x..x') must reappear at Y[j-i+x..j-i+x')
        x_at = i + break_x.start
        lo = c_min - i + x_at
        window = y_str.read(lo, c_max - i + x_at + width)
        hits = {lo + o - x_at + i for o in find_occurrences(list(break_x.symbols), window)}
        candidates = [j for j in candidates if j in hits]
    if break_y.is_break and candidates:
        # B_Y = Y[y..y') must reappear at X[i-j+y..i-j+y')
        y_at = c_max + break_y.start
        lo = i - candidates[-1] + y_at
        window = x_str.read(lo, i - candidates[0] + y_at + width)
        hits = {i + y_at - (lo + o) for o in find_occurrences(list(break_y.symbols), window)}
        candidates = [j for j in candidates if j in hits]
    if not candidates:
        return False

    j0 = candidates[0]
    for s in iter_sample(0, ell, rates.rate(n, k), stream.split("verify")):
        if x_str.probe(i + s) != y_str.probe(j0 + s):
            return False
    return True


def apx_lce_max(
    x_str: StringView,
    y_str: StringView,
    i: int,
    J: range,
    k: int,
    rates: RateConfig,
    stream: SeedStream,
    n: Optional[int] = None,
) -> int:
    """Value between max_j LCE_0(i, j) and max_j LCE_k(i, j) with high probability"""
    n = n if n is not None else len(x_str) + len(y_str)
    calls = 0

    def oracle(ell: int) -> bool:
        nonlocal calls
        if ell <= 0:
            return True
        clipped = range(max(J.start, 0), min(J.stop, len(y_str) - ell + 1))
        if not 0 <= i <= len(x_str) - ell or len(clipped) == 0:
            return False
        calls += 1
        return gap_match_oracle(x_str, y_str, i, clipped, k, ell, rates, stream.split(f"oracle-{ell}"), n)

    if not oracle(1):
        return 0
    low, high = 1, 2
    while oracle(high):
        low, high = high, 2 * high
    while high - low > 1:
        middle = (low + high) // 2
        if oracle(middle):
            low = middle
        else:
            high = middle
    logger.debug(f"apx_lce_max i={i} J=[{J.start}..{J.stop}) -> {low} after {calls} oracle calls")
    return low
