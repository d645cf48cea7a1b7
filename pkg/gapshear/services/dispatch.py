from typing import Optional, Union
import logging

from ..exceptions import ParameterError
from ..models.string_models import StringView
from ..models.tester_models import GapMode, GapVerdict, RateConfig, log_n
from .gap_tester import gap_engine
from .ptas import ptas_engine
from .randomness import SeedStream, default_walk_period
from .walk_embed import walk_engine

logger = logging.getLogger(__name__)


def walk_period(requested: Optional[int], n: int) -> int:
    """⌈2 ln n⌉ when unset; a requested period below 2 ln n is a usage error"""
    if requested is None:
        return default_walk_period(n)
    if requested < 2 * log_n(n):
        raise ParameterError(f"p={requested} is below 2 ln n = {2 * log_n(n):.2f}")
    return requested


def run_gap_mode(
    mode: Union[GapMode, str],
    x_str: StringView,
    y_str: StringView,
    k: int,
    seed: Union[int, SeedStream],
    rates: Optional[RateConfig] = None,
    alpha: Optional[int] = None,
    block_b: Optional[int] = None,
    window: Optional[int] = None,
    epsilon: Optional[float] = None,
    p: Optional[int] = None,
    verify: bool = False,
) -> GapVerdict:
    """Run one tester by name with the flags that mode needs"""
    mode = GapMode(mode)
    logger.debug(f"run_gap_mode {mode.value} k={k} |X|={len(x_str)} |Y|={len(y_str)}")
    if mode == GapMode.QUADRATIC:
        return gap_engine.gap_quadratic(x_str, y_str, k, seed, rates)
    if mode == GapMode.ALPHA:
        if alpha is None:
            raise ParameterError("alpha mode needs α")
        return gap_engine.gap_alpha(x_str, y_str, k, alpha, block_b, seed, rates)
    if mode == GapMode.PTAS:
        if window is None or epsilon is None:
            raise ParameterError("ptas mode needs both window ℓ and ε")
        return ptas_engine.gap_ptas(x_str, y_str, k, window, epsilon, seed, rates, verify=verify)

    n = max(len(x_str), len(y_str), 1)
    return walk_engine.gap_walk(x_str, y_str, k, walk_period(p, n), seed)
