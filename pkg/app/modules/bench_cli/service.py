"""
Benchmark populations, the timed grid runner and the command bodies behind
the CLI.
"""
import csv
import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from typing import IO, List, Optional, Sequence

import numpy as np

from ...config.my_settings import settings
from ...utils.my_logger import get_logger
from ..mass_discrete.service import fisher_yates_shuffle
from ..rng_core.model import CountingRng
from ..samplers.model import HybridConfig, SamplerName
from ..samplers.service import run_sampler
from ..stream_api.model import OutputMode
from .error_models import PopulationError
from .model import CSV_HEADER, BenchRecord, PopulationKind, PopulationSpec

logger = get_logger("BENCH_SERVICE")

GEOMETRIC_FLOOR = 1e-100
GAUSSIAN_SPAN = 10.0


def raw_population(kind: PopulationKind, n: int, rng: CountingRng) -> np.ndarray:
    """Unnormalized, unshuffled weights"""
    if kind == PopulationKind.UNIFORM:
        return 1.0 - rng.uniforms(n)
    if kind == PopulationKind.GEOMETRIC:
        if n == 1:
            return np.ones(1)
        # r ** k with r = floor ** (1 / (n - 1)), in log space
        return np.power(10.0, math.log10(GEOMETRIC_FLOOR) * np.arange(n) / (n - 1))
    points = np.linspace(0.0, GAUSSIAN_SPAN, n)
    return np.exp(-0.5 * points * points) / math.sqrt(2.0 * math.pi)


def gen_population(spec: PopulationSpec) -> List[float]:
    """Normalized weights of the requested family, shuffled with the population seed"""
    if spec.n < 1:
        raise PopulationError("Population size must be at least 1", field="n", value=spec.n)
    value_rng, shuffle_rng = CountingRng.seeded(spec.seed).spawn(2)
    raw = raw_population(spec.kind, spec.n, value_rng)
    total = math.fsum(raw.tolist())
    weights = (raw / total).tolist()
    return fisher_yates_shuffle(weights, shuffle_rng)


def run_cell(
    algorithm: str,
    kind: str,
    n: int,
    s: int,
    seed: int,
    output: str = OutputMode.DENSE.value,
    warmup: bool = True,
    config: Optional[HybridConfig] = None,
) -> BenchRecord:
    """One grid cell: generate, warm up, then time the sampling call alone"""
    algorithm = SamplerName(algorithm)
    kind = PopulationKind(kind)
    weights = gen_population(PopulationSpec(kind=kind, n=n, seed=seed))
    if warmup:
        run_sampler(algorithm, weights, s, CountingRng.seeded(seed), output=output, config=config)

    rng = CountingRng.seeded(seed)
    start = time.perf_counter_ns()
    result = run_sampler(algorithm, weights, s, rng, output=output, config=config)
    wall_ns = time.perf_counter_ns() - start
    return BenchRecord(
        algorithm=algorithm,
        population=kind,
        n=n,
        s=s,
        seed=seed,
        wall_ns=wall_ns,
        rng_draws=result.rng_draws,
        output_mode=OutputMode(output),
    )


def bench_grid(
    algos: Sequence[str],
    kinds: Sequence[str],
    ns: Sequence[int],
    ss: Sequence[int],
    seeds: Sequence[int],
    output: str = OutputMode.DENSE.value,
    warmup: bool = True,
    jobs: int = 1,
    config: Optional[HybridConfig] = None,
) -> List[BenchRecord]:
    """Every (algorithm, population, n, s, seed) cell, in grid order"""
    cells = list(itertools.product(algos, kinds, ns, ss, seeds))
    logger.info(f"⏱️ Benchmark grid: {len(cells)} cells, jobs={jobs}")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(run_cell, *cell, output, warmup, config) for cell in cells]
            return [future.result() for future in futures]
    return [run_cell(*cell, output, warmup, config) for cell in cells]


def write_bench_csv(records: Sequence[BenchRecord], out: IO[str]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow(record.to_row())


def default_seeds() -> List[int]:
    return settings.verify_seed_list
