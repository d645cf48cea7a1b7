#!/usr/bin/env python3
"""
Script to write a small set of corpus pairs for manual runs of the testers
"""
import sys
import os
from pathlib import Path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from gapshear.models.harness_models import CorpusKind, CorpusSpec
from gapshear.services.corpus import corpus_generator

CORPORA = [
    CorpusSpec(n=4096, kind=CorpusKind.UNIFORM_RANDOM, planted_edits=8, seed=1),
    CorpusSpec(n=4096, kind=CorpusKind.UNIFORM_RANDOM, binary=True, planted_edits=8, seed=2),
    CorpusSpec(n=4096, kind=CorpusKind.PERIODIC_STRESS, planted_edits=4, seed=3),
    CorpusSpec(n=2048, kind=CorpusKind.APERIODIC_VERIFIED, planted_edits=4, seed=4, window=64, k=4),
    CorpusSpec(n=1024, kind=CorpusKind.DISJOINT_PAIR, seed=5),
]


def write_corpora(directory: str = "corpus"):
    """Write every configured pair as <kind>-<seed>.x / .y"""
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    for spec in CORPORA:
        x_bytes, y_bytes = corpus_generator.generate(spec)
        stem = f"{spec.kind.value}-{spec.seed}"
        (target / f"{stem}.x").write_bytes(x_bytes)
        (target / f"{stem}.y").write_bytes(y_bytes)
        print(f"Wrote {stem} (|X|={len(x_bytes)}, |Y|={len(y_bytes)})")


if __name__ == "__main__":
    try:
        write_corpora(sys.argv[1] if len(sys.argv) > 1 else "corpus")
    except Exception as e:
        print(f"Error generating corpus: {e}")
        sys.exit(1)
