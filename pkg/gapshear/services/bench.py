import time
from pathlib import Path
from typing import Iterable, List, Optional, Union
import logging

import pandas as pd

from ..models.harness_models import BenchRow, CorpusKind, CorpusSpec
from ..models.string_models import Text
from ..models.tester_models import GapMode, RateConfig
from .corpus import corpus_generator
from .dispatch import run_gap_mode
from .randomness import derive_seed

logger = logging.getLogger(__name__)


class ProbeBenchmark:
    """
    Probe counts of the testers over a grid of (n, k, mode) cells.

    Every cell draws its own corpus pair from a seed derived from the base
    seed, so a grid replays exactly.
    """

    def __init__(self):
        self.CSV_COLUMNS = ["n", "k", "mode", "seed", "verdict", "probes", "wall_ms"]
        # Per-mode tester settings used when the grid does not override them
        self.MODE_DEFAULTS = {
            GapMode.ALPHA: {"alpha": 2},
            GapMode.PTAS: {"window": 64, "epsilon": 0.5},
        }

    def cell_seed(self, base_seed: int, n: int, k: int, mode: GapMode, index: int) -> int:
        # 63 bits keep the CSV seed column a plain int64
        return derive_seed(base_seed, f"bench/{n}/{k}/{mode.value}", index) >> 1

    def run_cell(
        self,
        n: int,
        k: int,
        mode: Union[GapMode, str],
        seed: int,
        planted: Optional[int] = None,
        rates: Optional[RateConfig] = None,
        **options,
    ) -> BenchRow:
        mode = GapMode(mode)
        settings_for_mode = {**self.MODE_DEFAULTS.get(mode, {}), **options}
        kind = CorpusKind.APERIODIC_VERIFIED if mode == GapMode.PTAS else CorpusKind.UNIFORM_RANDOM
        spec = CorpusSpec(
            n=n,
            kind=kind,
            planted_edits=k // 2 if planted is None else planted,
            seed=seed,
            window=settings_for_mode.get("window") if kind == CorpusKind.APERIODIC_VERIFIED else None,
            k=k if kind == CorpusKind.APERIODIC_VERIFIED else None,
        )
        x_bytes, y_bytes = corpus_generator.generate(spec)
        x_str, y_str = Text(x_bytes, label="X"), Text(y_bytes, label="Y")

        started = time.perf_counter()
        result = run_gap_mode(mode, x_str, y_str, k, seed, rates, **settings_for_mode)
        wall_ms = (time.perf_counter() - started) * 1000
        return BenchRow(
            n=n, k=k, mode=mode.value, seed=seed, verdict=result.verdict.value,
            probes=result.probes, wall_ms=round(wall_ms, 3),
        )

    def run_grid(
        self,
        ns: Iterable[int],
        ks: Iterable[int],
        modes: Iterable[Union[GapMode, str]],
        seeds_per_cell: int,
        base_seed: int = 0,
        planted: Optional[int] = None,
        rates: Optional[RateConfig] = None,
        **options,
    ) -> pd.DataFrame:
        rows: List[BenchRow] = []
        for n in sorted(ns):
            for k in sorted(ks):
                for mode in sorted(GapMode(m) for m in modes):
                    seeds = sorted(self.cell_seed(base_seed, n, k, mode, s) for s in range(seeds_per_cell))
                    for seed in seeds:
                        rows.append(self.run_cell(n, k, mode, seed, planted, rates, **options))
                    cell = rows[-len(seeds):] if seeds else []
                    if cell:
                        mean = sum(row.probes for row in cell) / len(cell)
                        logger.info(f"bench n={n} k={k} mode={mode.value}: mean probes {mean:.1f}")
        return pd.DataFrame([row.model_dump() for row in rows], columns=self.CSV_COLUMNS)

    def write_csv(self, frame: pd.DataFrame, path: Union[str, Path]) -> Path:
        """Append rows; the header is written only into a new or empty file"""
        path = Path(path)
        new_file = not path.exists() or path.stat().st_size == 0
        frame[self.CSV_COLUMNS].to_csv(path, mode="a", header=new_file, index=False)
        return path

    def read_csv(self, path: Union[str, Path]) -> pd.DataFrame:
        return pd.read_csv(path, dtype={"mode": str, "verdict": str})

    def mean_probes(self, frame: pd.DataFrame) -> pd.DataFrame:
        return frame.groupby(["n", "k", "mode"], as_index=False)["probes"].mean()


# Global probe benchmark instance
probe_benchmark = ProbeBenchmark()
