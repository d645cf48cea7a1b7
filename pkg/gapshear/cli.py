"""Command-line front end: testers, embeddings, corpora and probe benchmarks."""
import argparse
import sys
import time
from pathlib import Path
from typing import List, Optional, Tuple
import logging

import numpy as np

from .config import Settings
from .exceptions import GapShearError, ParameterError
from .logging_config import configure_logging
from .models.harness_models import CorpusKind, CorpusSpec, RunReport
from .models.string_models import Text
from .models.tester_models import GapMode, RateConfig, Verdict
from .services.bench import probe_benchmark
from .services.corpus import corpus_generator
from .services.dispatch import run_gap_mode, walk_period
from .services.randomness import SEED_MASK, make_shared_randomness, parse_seed
from .services.strings import hamming_distance
from .services.walk_embed import walk_engine

logger = logging.getLogger(__name__)

EXIT_ACCEPT = 0
EXIT_REJECT = 1
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gapshear", description=__doc__)
    parser.add_argument("--seed", help="64-bit seed, decimal or 0x-hex (falls back to GAPSHEAR_SEED)")
    parser.add_argument("--rate-c", type=float, help="constant c of the sampling rates")
    parser.add_argument("--lambda", dest="failure_exponent", type=float, help="failure exponent λ")
    parser.add_argument("--log-level", help="logging level (default from LOG_LEVEL)")
    parser.add_argument("--log-json", action="store_true", help="render logs as JSON")
    commands = parser.add_subparsers(dest="command", required=True)

    gap = commands.add_parser("gap", help="run a gap edit distance tester on two files")
    gap.add_argument("x", type=Path)
    gap.add_argument("y", type=Path)
    gap.add_argument("--mode", choices=[m.value for m in GapMode], default=GapMode.QUADRATIC.value)
    gap.add_argument("--k", type=int, required=True)
    gap.add_argument("--alpha", type=int, help="diagonal group width (alpha mode)")
    gap.add_argument("--block-b", type=int, help="block parameter b (alpha mode, default auto)")
    gap.add_argument("--window", type=int, help="anchor length ℓ (ptas mode)")
    gap.add_argument("--epsilon", type=float, help="approximation ε (ptas mode)")
    gap.add_argument("--p", type=int, help="sampling period (walk mode, default ⌈2 ln n⌉)")
    gap.add_argument("--verify-aperiodic", action="store_true", help="check the ptas precondition first")
    gap.add_argument("--strip-trailing-newline", action="store_true")

    embed = commands.add_parser("embed", help="embed a file into Hamming space")
    embed.add_argument("x", type=Path)
    embed.add_argument("--p", type=int, help="sampling period (default ⌈2 ln n⌉)")
    embed.add_argument("--n", type=int, help="embedding length parameter (default |X|, or the longer input)")
    embed.add_argument("--out", type=Path, required=True)
    embed.add_argument("--other", type=Path, help="second file embedded with the same randomness")
    embed.add_argument("--hex", action="store_true", help="write hex text instead of raw bytes")
    embed.add_argument("--extended", action="store_true", help="allow a non-binary alphabet")
    embed.add_argument("--strip-trailing-newline", action="store_true")

    distortion = commands.add_parser("distortion", help="empirical distortion of the embedding")
    distortion.add_argument("x", type=Path)
    distortion.add_argument("y", type=Path)
    distortion.add_argument("--p", type=int)
    distortion.add_argument("--trials", type=int, default=100)
    distortion.add_argument("--extended", action="store_true")
    distortion.add_argument("--strip-trailing-newline", action="store_true")

    gen = commands.add_parser("gen", help="generate a corpus pair")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--alphabet-size", type=int, default=26, help="1-26 draws from a..z, larger sizes from bytes 0..size-1")
    gen.add_argument("--binary", action="store_true")
    gen.add_argument("--kind", choices=[c.value for c in CorpusKind], default=CorpusKind.UNIFORM_RANDOM.value)
    gen.add_argument("--planted", type=int, default=0)
    gen.add_argument("--window", type=int)
    gen.add_argument("--k", type=int)
    gen.add_argument("--out", type=Path, required=True, help="path for X")
    gen.add_argument("--out-y", type=Path, help="path for Y (default: <out>.y)")

    bench = commands.add_parser("bench", help="probe counts over a grid of cells")
    bench.add_argument("--n", type=int, nargs="+", required=True)
    bench.add_argument("--k", type=int, nargs="+", required=True)
    bench.add_argument("--mode", nargs="+", choices=[m.value for m in GapMode], default=[GapMode.QUADRATIC.value])
    bench.add_argument("--seeds", type=int, default=1, help="seeds per cell")
    bench.add_argument("--planted", type=int, help="planted edits per pair (default k // 2)")
    bench.add_argument("--alpha", type=int)
    bench.add_argument("--window", type=int)
    bench.add_argument("--epsilon", type=float)
    bench.add_argument("--out", type=Path, required=True)
    return parser


def resolve_seed(flag: Optional[str], settings: Settings) -> int:
    if flag is not None:
        return parse_seed(flag)
    if settings.GAPSHEAR_SEED is not None:
        return parse_seed(settings.GAPSHEAR_SEED)
    return int(np.random.SeedSequence().entropy) & SEED_MASK


def resolve_rates(args: argparse.Namespace, settings: Settings) -> RateConfig:
    return RateConfig(
        hp_constant=args.rate_c if args.rate_c is not None else settings.RATE_C,
        failure_exponent=args.failure_exponent if args.failure_exponent is not None else settings.FAILURE_EXPONENT,
    )


def read_input(path: Path, strip_newline: bool) -> bytes:
    data = path.read_bytes()
    if strip_newline and data.endswith(b"\n"):
        data = data[:-2] if data.endswith(b"\r\n") else data[:-1]
    return data


def cmd_gap(args: argparse.Namespace, seed: int, rates: RateConfig) -> Tuple[RunReport, int]:
    mode = GapMode(args.mode)
    if mode == GapMode.ALPHA and args.alpha is None:
        raise ParameterError("--mode alpha requires --alpha")
    if mode == GapMode.PTAS and (args.window is None or args.epsilon is None):
        raise ParameterError("--mode ptas requires --window and --epsilon")
    x_str = Text(read_input(args.x, args.strip_trailing_newline), label="X")
    y_str = Text(read_input(args.y, args.strip_trailing_newline), label="Y")

    result = run_gap_mode(
        mode, x_str, y_str, args.k, seed, rates,
        alpha=args.alpha, block_b=args.block_b, window=args.window, epsilon=args.epsilon,
        p=args.p, verify=args.verify_aperiodic,
    )
    report = RunReport(
        command="gap",
        seed=seed,
        parameters={
            "mode": mode.value, "k": args.k, "alpha": args.alpha, "block_b": args.block_b,
            "window": args.window, "epsilon": args.epsilon, "p": args.p,
            "rate_c": rates.hp_constant, "lambda": rates.failure_exponent,
        },
        verdict=result.verdict.value,
        probes_x=result.probes_x,
        probes_y=result.probes_y,
        wall_time_ms=result.wall_time_ms,
        extra=dict(result.details),
    )
    return report, EXIT_ACCEPT if result.verdict == Verdict.ACCEPT else EXIT_REJECT


def cmd_embed(args: argparse.Namespace, seed: int) -> Tuple[RunReport, int]:
    started = time.perf_counter()
    x_str = Text(read_input(args.x, args.strip_trailing_newline), label="X")
    other = Text(read_input(args.other, args.strip_trailing_newline), label="Y") if args.other else None
    n = args.n or max(len(x_str), len(other) if other is not None else 0, 1)
    p = walk_period(args.p, n)
    randomness = make_shared_randomness(n, p, seed, binary=not args.extended)

    embedding = walk_engine.sublinear_embed(x_str, randomness)
    args.out.write_bytes(embedding.output.hex().encode("ascii") if args.hex else embedding.output)
    extra = {"sample_count": randomness.size, "n": n, "p": p}
    probes_y = 0
    if other is not None:
        other_embedding = walk_engine.sublinear_embed(other, randomness)
        extra["cross_hd"] = hamming_distance(embedding.output, other_embedding.output)
        probes_y = other.probes

    report = RunReport(
        command="embed",
        seed=seed,
        parameters={"p": p, "n": n, "hex": args.hex, "binary": not args.extended},
        output_path=str(args.out),
        probes_x=x_str.probes,
        probes_y=probes_y,
        wall_time_ms=(time.perf_counter() - started) * 1000,
        extra=extra,
    )
    return report, EXIT_ACCEPT


def cmd_distortion(args: argparse.Namespace, seed: int) -> Tuple[RunReport, int]:
    started = time.perf_counter()
    x_str = Text(read_input(args.x, args.strip_trailing_newline), label="X")
    y_str = Text(read_input(args.y, args.strip_trailing_newline), label="Y")
    n = max(len(x_str), len(y_str), 1)
    p = walk_period(args.p, n)
    stats = walk_engine.embed_distortion_check(x_str, y_str, p, args.trials, seed, binary=not args.extended)
    report = RunReport(
        command="distortion",
        seed=seed,
        parameters={"p": p, "trials": args.trials, "binary": not args.extended},
        probes_x=x_str.probes,
        probes_y=y_str.probes,
        wall_time_ms=(time.perf_counter() - started) * 1000,
        extra={
            "edit_distance": stats.edit_distance,
            "lower_frequency": stats.lower_frequency,
            "upper_frequency": stats.upper_frequency,
            "joint_frequency": stats.joint_frequency,
            "mean_hamming": stats.mean_hamming,
        },
    )
    return report, EXIT_ACCEPT


def cmd_gen(args: argparse.Namespace, seed: int) -> Tuple[RunReport, int]:
    started = time.perf_counter()
    spec = CorpusSpec(
        n=args.n,
        alphabet_size=args.alphabet_size,
        binary=args.binary,
        kind=CorpusKind(args.kind),
        planted_edits=args.planted,
        seed=seed,
        window=args.window,
        k=args.k,
    )
    x_bytes, y_bytes = corpus_generator.generate(spec)
    out_y = args.out_y or args.out.with_name(args.out.name + ".y")
    args.out.write_bytes(x_bytes)
    out_y.write_bytes(y_bytes)
    report = RunReport(
        command="gen",
        seed=seed,
        parameters=spec.model_dump(mode="json"),
        output_path=str(args.out),
        wall_time_ms=(time.perf_counter() - started) * 1000,
        extra={"y_path": str(out_y), "x_len": len(x_bytes), "y_len": len(y_bytes)},
    )
    return report, EXIT_ACCEPT


def cmd_bench(args: argparse.Namespace, seed: int, rates: RateConfig) -> Tuple[RunReport, int]:
    started = time.perf_counter()
    options = {
        name: value
        for name, value in (("alpha", args.alpha), ("window", args.window), ("epsilon", args.epsilon))
        if value is not None
    }
    frame = probe_benchmark.run_grid(
        args.n, args.k, args.mode, args.seeds, base_seed=seed, planted=args.planted, rates=rates, **options,
    )
    probe_benchmark.write_csv(frame, args.out)
    report = RunReport(
        command="bench",
        seed=seed,
        parameters={"seeds": args.seeds, "planted": args.planted, "modes": ",".join(args.mode)},
        output_path=str(args.out),
        wall_time_ms=(time.perf_counter() - started) * 1000,
        extra={"rows": len(frame)},
    )
    return report, EXIT_ACCEPT


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_ACCEPT

    settings = Settings()
    configure_logging(args.log_level or settings.LOG_LEVEL, args.log_json or settings.LOG_JSON)

    try:
        seed = resolve_seed(args.seed, settings)
        rates = resolve_rates(args, settings)
        if args.command == "gap":
            report, code = cmd_gap(args, seed, rates)
        elif args.command == "embed":
            report, code = cmd_embed(args, seed)
        elif args.command == "distortion":
            report, code = cmd_distortion(args, seed)
        elif args.command == "gen":
            report, code = cmd_gen(args, seed)
        else:
            report, code = cmd_bench(args, seed, rates)
    except (GapShearError, OSError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_ERROR

    print(report.model_dump_json(indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
