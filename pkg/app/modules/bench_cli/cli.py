"""
Command-line entry point: gen, sample, bench, verify and masspois.

Exit codes: 0 success, 1 usage or domain error, 2 verification failure,
3 I/O error.
"""
import argparse
import csv
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, Iterator, List, Optional, Sequence, TextIO

from pydantic import ValidationError

from ...config.my_settings import settings
from ...utils.my_logger import get_logger
from ..mass_discrete.service import mass_sample_poisson
from ..rng_core.error_models import DomainError, ScriptExhaustedError
from ..rng_core.model import CountingRng
from ..samplers.error_models import InvalidConfigError, InvalidSampleSizeError, UnknownSamplerError
from ..samplers.model import HybridConfig, SamplerName
from ..samplers.service import run_sampler
from ..stats_verify.error_models import LengthMismatchError, OutcomeSpaceTooLargeError
from ..stats_verify.service import NEGATIVE_CONTROL, default_cases, run_verify_suite
from ..stream_api.error_models import (
    NegativeWeightError,
    NormalizationError,
    SinkBoundsError,
    StreamUnderflowError,
    WeightFileError,
)
from ..stream_api.model import OutputMode
from ..stream_api.service import read_weights, write_weights
from .error_models import OutputError, PopulationError, UsageError
from .model import PopulationKind, PopulationSpec
from .service import bench_grid, gen_population, write_bench_csv

logger = get_logger("BENCH_CLI")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAILED = 2
EXIT_IO = 3

SEED_MASK = 2**64 - 1

USAGE_ERRORS = (
    UsageError,
    DomainError,
    ScriptExhaustedError,
    InvalidConfigError,
    InvalidSampleSizeError,
    UnknownSamplerError,
    NegativeWeightError,
    NormalizationError,
    SinkBoundsError,
    StreamUnderflowError,
    PopulationError,
    OutcomeSpaceTooLargeError,
    LengthMismatchError,
    ValidationError,
)
IO_ERRORS = (WeightFileError, OutputError, OSError)


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that reports bad flags as UsageError instead of exiting"""

    def error(self, message: str):
        raise UsageError(message)


def _list_of(kind: Callable[[str], object]) -> Callable[[str], list]:
    def parse(text: str) -> list:
        try:
            return [kind(item.strip()) for item in text.split(",") if item.strip()]
        except ValueError as e:
            raise argparse.ArgumentTypeError(str(e))
    return parse


def _seed(text: str) -> int:
    """Signed or unsigned 64-bit seed, folded to its unsigned bit pattern"""
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed: {text!r}")
    if not -(2**63) <= value <= SEED_MASK:
        raise argparse.ArgumentTypeError(f"seed {value} does not fit in 64 bits")
    return value & SEED_MASK


@contextmanager
def _output(path: Optional[str]) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            yield handle
    except OSError as e:
        raise OutputError(f"Cannot write {path}: {e}", path=path)


def _hybrid_config(args: argparse.Namespace) -> HybridConfig:
    return HybridConfig(theta=args.theta, beta_run_limit=args.beta_run_limit)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_gen(args: argparse.Namespace) -> int:
    weights = gen_population(PopulationSpec(kind=args.kind, n=args.n, seed=args.seed))
    if args.out:
        try:
            write_weights(args.out, weights)
        except WeightFileError as e:
            raise OutputError(e.message, path=args.out)
    else:
        sys.stdout.writelines(f"{w!r}\n" for w in weights)
    return EXIT_OK


def cmd_sample(args: argparse.Namespace) -> int:
    if (args.weights is None) == (args.kind is None):
        raise UsageError("Give exactly one of --weights or --kind", flag="--weights")
    if args.weights is not None:
        weights = read_weights(args.weights)
    else:
        if args.n is None:
            raise UsageError("--kind needs --n", flag="--n")
        weights = gen_population(PopulationSpec(kind=args.kind, n=args.n, seed=args.seed))

    result = run_sampler(
        args.algo,
        weights,
        args.s,
        CountingRng.seeded(args.seed),
        output=args.output,
        total=args.total,
        config=_hybrid_config(args),
    )
    with _output(args.out) as out:
        if result.output_mode == OutputMode.ARRAY:
            out.writelines(f"{index}\n" for index in result.array)
        elif result.output_mode == OutputMode.DENSE:
            out.writelines(f"{count}\n" for count in result.counts.dense)
        else:
            out.writelines(f"{index},{count}\n" for index, count in sorted(result.counts.sparse.items()))
    logger.info(f"✅ Sampled s={args.s} from n={len(weights)} with {args.algo}: {result.rng_draws} uniforms")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    records = bench_grid(
        args.algos,
        args.kinds,
        args.n,
        args.s,
        args.seeds,
        output=args.output,
        warmup=args.warmup,
        jobs=args.jobs,
        config=_hybrid_config(args),
    )
    with _output(args.out) as out:
        write_bench_csv(records, out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cases = default_cases(
        replicates=args.replicates,
        random_vectors=args.random_vectors,
        random_replicates=args.random_replicates,
    )
    reports = run_verify_suite(args.algos, args.seeds, cases=cases, alpha=args.alpha, jobs=args.jobs)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["algorithm", "case", "seeds", "p_values", "passed"])
    for report in reports:
        writer.writerow([
            report.algorithm,
            report.case,
            ";".join(str(seed) for seed in report.seeds),
            ";".join(f"{p:.6g}" for p in report.p_values),
            "pass" if report.passed else "FAIL",
        ])
    failed = [r for r in reports if not r.passed]
    if failed:
        logger.error(f"❌ {len(failed)} of {len(reports)} verification cases failed")
        return EXIT_VERIFY_FAILED
    logger.info(f"✅ All {len(reports)} verification cases passed")
    return EXIT_OK


def cmd_masspois(args: argparse.Namespace) -> int:
    _, summary = mass_sample_poisson(args.lam, args.s, CountingRng.seeded(args.seed), config=_hybrid_config(args))
    print(
        f"s={summary.s} mean={summary.mean:.6f} variance={summary.variance:.6f} "
        f"support_consumed={summary.support_consumed} wall_ns={summary.wall_ns}"
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> CliParser:
    samplers = [name.value for name in SamplerName]
    kinds = [kind.value for kind in PopulationKind]
    outputs = [mode.value for mode in OutputMode]

    hybrid = CliParser(add_help=False)
    hybrid.add_argument("--theta", type=float, default=settings.HYBRID_THETA, help="Hybrid mode-switch threshold")
    hybrid.add_argument("--beta-run-limit", type=int, default=settings.BETA_RUN_LIMIT, help="Beta landings per element before a forced binomial step")

    parser = CliParser(prog="wrs-bench", description="Weighted sampling with replacement: populations, samples, benchmarks and checks")
    commands = parser.add_subparsers(dest="command", parser_class=CliParser)
    commands.required = True

    gen = commands.add_parser("gen", help="Generate a benchmark population")
    gen.add_argument("--kind", required=True, choices=kinds)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--seed", type=_seed, default=settings.DEFAULT_SEED)
    gen.add_argument("--out", help="Weight file (.f64 for raw doubles); stdout when omitted")
    gen.set_defaults(handler=cmd_gen)

    sample = commands.add_parser("sample", parents=[hybrid], help="Draw one sample")
    sample.add_argument("--algo", required=True, choices=samplers)
    sample.add_argument("--weights", help="Weight file to sample from")
    sample.add_argument("--kind", choices=kinds, help="Sample a generated population instead of a file")
    sample.add_argument("--n", type=int, help="Population size for --kind")
    sample.add_argument("--total", type=float, help="Declared total mass of unnormalized weights")
    sample.add_argument("--s", type=int, required=True)
    sample.add_argument("--seed", type=_seed, default=settings.DEFAULT_SEED)
    sample.add_argument("--output", choices=outputs, default=OutputMode.DENSE.value)
    sample.add_argument("--out", help="Output file; stdout when omitted")
    sample.set_defaults(handler=cmd_sample)

    bench = commands.add_parser("bench", parents=[hybrid], help="Time a grid of sampler runs, CSV on stdout")
    bench.add_argument("--algos", type=_list_of(str), default=samplers)
    bench.add_argument("--kinds", type=_list_of(str), default=kinds)
    bench.add_argument("--n", type=_list_of(int), required=True)
    bench.add_argument("--s", type=_list_of(int), required=True)
    bench.add_argument("--seeds", type=_list_of(_seed), default=[settings.DEFAULT_SEED])
    bench.add_argument("--output", choices=outputs, default=OutputMode.DENSE.value)
    bench.add_argument("--jobs", type=int, default=1)
    bench.add_argument("--warmup", action=argparse.BooleanOptionalAction, default=True)
    bench.add_argument("--out", help="CSV file; stdout when omitted")
    bench.set_defaults(handler=cmd_bench)

    verify = commands.add_parser("verify", help="Exact multinomial goodness-of-fit suite")
    verify.add_argument("--algos", type=_list_of(str), default=samplers)
    verify.add_argument("--seeds", type=_list_of(_seed), default=settings.verify_seed_list)
    verify.add_argument("--replicates", type=int, default=settings.VERIFY_REPLICATES)
    verify.add_argument("--random-vectors", type=int, default=10)
    verify.add_argument("--random-replicates", type=int, default=None)
    verify.add_argument("--alpha", type=float, default=settings.VERIFY_ALPHA)
    verify.add_argument("--jobs", type=int, default=1)
    verify.set_defaults(handler=cmd_verify)

    masspois = commands.add_parser("masspois", parents=[hybrid], help="Poisson mass-sampling summary")
    masspois.add_argument("--lambda", dest="lam", type=float, required=True)
    masspois.add_argument("--s", type=int, required=True)
    masspois.add_argument("--seed", type=_seed, default=settings.DEFAULT_SEED)
    masspois.set_defaults(handler=cmd_masspois)
    return parser


def _validate(args: argparse.Namespace) -> None:
    if getattr(args, "jobs", 1) < 1:
        raise UsageError("--jobs must be at least 1", flag="--jobs")
    known = {name.value for name in SamplerName}
    if args.command == "bench":
        for name in args.algos:
            if name not in known:
                raise UsageError(f"Unknown sampler {name!r}", flag="--algos")
        for kind in args.kinds:
            if kind not in {k.value for k in PopulationKind}:
                raise UsageError(f"Unknown population {kind!r}", flag="--kinds")
    if args.command == "verify":
        for name in args.algos:
            if name not in known and name != NEGATIVE_CONTROL:
                raise UsageError(f"Unknown sampler {name!r}", flag="--algos")


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _validate(args)
        return args.handler(args)
    except USAGE_ERRORS as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE
    except IO_ERRORS as e:
        logger.error(f"❌ {e}")
        return EXIT_IO
