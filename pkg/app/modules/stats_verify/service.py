"""
Statistical oracles: exact multinomial pmf, Pearson chi-square machinery and
the goodness-of-fit suite every sampler has to pass.
"""
import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import gammaincc, gammaln, pdtr, pdtrc, xlogy

from ...config.my_settings import settings
from ...utils.my_logger import get_logger
from ..rng_core.error_models import DomainError
from ..rng_core.model import CountingRng
from ..samplers.model import HybridConfig, SamplerName
from ..samplers.service import SAMPLERS, resolve_sampler
from ..stream_api.model import DenseCollector
from ..stream_api.service import stream_from_list
from .error_models import LengthMismatchError, OutcomeSpaceTooLargeError
from .model import CaseReport, GofMode, GofReport, VerifyCase

logger = get_logger("STATS_VERIFY_SERVICE")

NEGATIVE_CONTROL = "flipped"
FLIPPED_EPSILON = 0.01

Runner = Callable[..., Any]


def _check_lengths(left: Sequence, right: Sequence) -> None:
    if len(left) != len(right):
        raise LengthMismatchError(
            f"Lengths differ: {len(left)} vs {len(right)}", left=len(left), right=len(right)
        )


def multinomial_exact_pmf(counts: Sequence[int], weights: Sequence[float]) -> float:
    """s! / prod(c_i!) * prod(p_i ** c_i), evaluated in log space"""
    _check_lengths(counts, weights)
    c = np.asarray(counts, dtype=float)
    p = np.asarray(weights, dtype=float)
    if np.any((c > 0) & (p <= 0.0)):
        return 0.0
    log_pmf = gammaln(c.sum() + 1.0) - gammaln(c + 1.0).sum() + xlogy(c, p).sum()
    return float(np.exp(log_pmf))


def enumerate_count_vectors(s: int, n: int) -> Iterator[Tuple[int, ...]]:
    """Every way to split s samples over n elements (stars and bars)"""
    if n == 0:
        if s == 0:
            yield ()
        return
    for bars in itertools.combinations(range(s + n - 1), n - 1):
        previous = -1
        counts = []
        for bar in bars:
            counts.append(bar - previous - 1)
            previous = bar
        counts.append(s + n - 2 - previous)
        yield tuple(counts)


def count_vector_space(s: int, n: int) -> int:
    return math.comb(s + n - 1, n - 1) if n else int(s == 0)


def chi_square_stat(observed: Sequence[float], expected: Sequence[float]) -> Tuple[float, int]:
    """Pearson statistic and its degrees of freedom (bins - 1)"""
    _check_lengths(observed, expected)
    o = np.asarray(observed, dtype=float)
    e = np.asarray(expected, dtype=float)
    if np.any(e <= 0.0):
        raise DomainError("Expected counts must be positive after pooling", parameter="expected", value=float(e.min()))
    statistic = float(np.sum((o - e) ** 2 / e))
    return statistic, max(len(e) - 1, 0)


def chi_square_pvalue(statistic: float, dof: int) -> float:
    """Regularized upper incomplete gamma Q(dof / 2, statistic / 2)"""
    if statistic < 0 or math.isnan(statistic):
        raise DomainError("Chi-square statistic must be nonnegative", parameter="statistic", value=statistic)
    if math.isinf(statistic):
        return 0.0
    if statistic == 0.0 or dof == 0:
        return 1.0
    return float(gammaincc(dof / 2.0, statistic / 2.0))


def pool_bins(
    observed: Sequence[float],
    expected: Sequence[float],
    threshold: float = settings.POOLING_THRESHOLD,
) -> Tuple[List[float], List[float], int]:
    """
    Merge bins until every expected count reaches ``threshold``, starting at
    both tails and working inward. Returns pooled observed, pooled expected and
    the number of bins merged away.
    """
    _check_lengths(observed, expected)
    n = len(expected)
    if n == 0:
        return [], [], 0

    def take(indices: Iterable[int]) -> Tuple[float, float, int]:
        o = e = 0.0
        last = None
        for k in indices:
            o += observed[k]
            e += expected[k]
            last = k
            if e >= threshold:
                break
        return o, e, last

    lo_o, lo_e, i = take(range(n))
    groups = [[lo_o, lo_e]]
    if i == n - 1:
        return [lo_o], [lo_e], n - 1

    hi_o, hi_e, j = take(range(n - 1, i, -1))
    o = e = 0.0
    for k in range(i + 1, j):
        o += observed[k]
        e += expected[k]
        if e >= threshold:
            groups.append([o, e])
            o = e = 0.0
    # Interior leftover joins the right tail, an underfull right tail joins its neighbour
    hi_o += o
    hi_e += e
    if hi_e >= threshold:
        groups.append([hi_o, hi_e])
    else:
        groups[-1][0] += hi_o
        groups[-1][1] += hi_e

    pooled_o = [g[0] for g in groups]
    pooled_e = [g[1] for g in groups]
    return pooled_o, pooled_e, n - len(groups)


def _gof(observed: Sequence[float], expected: Sequence[float], threshold: float) -> GofReport:
    pooled_o, pooled_e, merged = pool_bins(observed, expected, threshold)
    statistic, dof = chi_square_stat(pooled_o, pooled_e)
    return GofReport(statistic=statistic, dof=dof, p_value=chi_square_pvalue(statistic, dof), bins_pooled=merged)


def _impossible(dof: int) -> GofReport:
    return GofReport(statistic=math.inf, dof=max(dof, 1), p_value=0.0, bins_pooled=0)


# ---------------------------------------------------------------------------
# Negative control
# ---------------------------------------------------------------------------

def sample_flipped_interval(weights, s, rng, sink, config=None, total=None, tolerance=settings.CLAMP_TOLERANCE, epsilon=FLIPPED_EPSILON):
    """
    Deliberately wrong sampler: intervals [S_{i-1}, S_i) over a population
    with an extra first element that steals ``epsilon`` from the last one.
    Picks of the extra element are reported as element 0.
    """
    stream = stream_from_list(weights, total=total, tolerance=tolerance)
    probs = [stream.next() for _ in range(len(stream))]
    n = len(probs)
    stolen = min(epsilon, probs[-1])
    mutated = np.array([stolen] + probs[:-1] + [probs[-1] - stolen])
    boundaries = np.cumsum(mutated)
    positions = rng.uniforms(s)
    picks = np.minimum(np.searchsorted(boundaries, positions, side="right"), n)
    picks = np.maximum(picks - 1, 0)
    counts = np.bincount(picks, minlength=n).tolist()
    for index, count in enumerate(counts):
        if count:
            sink.accept(index, count)
    sink.close()
    return None


def resolve_runner(name: str | SamplerName) -> Runner:
    if name == NEGATIVE_CONTROL:
        return sample_flipped_interval
    return SAMPLERS[resolve_sampler(name)]


# ---------------------------------------------------------------------------
# Goodness of fit
# ---------------------------------------------------------------------------

def replicate_counts(
    runner: Runner,
    weights: List[float],
    s: int,
    replicates: int,
    rng: CountingRng,
    config: Optional[HybridConfig] = None,
) -> Counter:
    """Tally of count vectors over independent sampler runs"""
    n = len(weights)
    tally: Counter = Counter()
    for _ in range(replicates):
        sink = DenseCollector(n)
        runner(weights, s, rng, sink, config, None, settings.CLAMP_TOLERANCE)
        tally[tuple(sink.counts)] += 1
    return tally


def _parallel_counts(runner, weights, s, replicates, rng, config, jobs) -> Counter:
    children = rng.spawn(jobs)
    shares = [replicates // jobs + (1 if k < replicates % jobs else 0) for k in range(jobs)]
    tally: Counter = Counter()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(replicate_counts, runner, weights, s, share, child, config)
            for share, child in zip(shares, children)
            if share
        ]
        for future in futures:
            tally.update(future.result())
    return tally


def gof_multinomial(
    sampler: str | SamplerName | Runner,
    weights: List[float],
    s: int,
    replicates: int,
    rng: CountingRng,
    mode: GofMode | str = GofMode.EXACT,
    config: Optional[HybridConfig] = None,
    threshold: float = settings.POOLING_THRESHOLD,
    max_outcomes: int = settings.MAX_EXACT_OUTCOMES,
    jobs: int = 1,
) -> GofReport:
    """
    Run a sampler ``replicates`` times and test the observed count vectors
    against the multinomial(s, p) law, either over the full outcome space
    (exact) or through per-element totals (marginal).
    """
    mode = GofMode(mode)
    runner = sampler if callable(sampler) else resolve_runner(sampler)
    total = math.fsum(weights)
    probs = [w / total for w in weights]
    n = len(probs)

    outcomes: List[Tuple[int, ...]] = []
    if mode == GofMode.EXACT:
        size = count_vector_space(s, n)
        if size > max_outcomes:
            raise OutcomeSpaceTooLargeError(
                f"{size} count vectors exceed the exact-mode limit of {max_outcomes}",
                outcomes=size,
                limit=max_outcomes,
            )
        outcomes = list(enumerate_count_vectors(s, n))

    if jobs > 1:
        tally = _parallel_counts(runner, weights, s, replicates, rng, config, jobs)
    else:
        tally = replicate_counts(runner, weights, s, replicates, rng, config)

    if mode == GofMode.EXACT:
        masses = {outcome: multinomial_exact_pmf(outcome, probs) for outcome in outcomes}
        bins = [(replicates * mass, tally.get(outcome, 0)) for outcome, mass in masses.items() if mass > 0.0]
        if any(masses.get(vector, 0.0) <= 0.0 for vector in tally):
            return _impossible(len(bins) - 1)
        bins.sort(key=lambda b: -b[0])
        expected = [b[0] for b in bins]
        observed = [b[1] for b in bins]
    else:
        totals = np.zeros(n)
        for vector, times in tally.items():
            totals += times * np.asarray(vector, dtype=float)
        expected_all = replicates * s * np.asarray(probs)
        if np.any((expected_all == 0.0) & (totals > 0)):
            return _impossible(int(np.count_nonzero(expected_all)) - 1)
        keep = expected_all > 0.0
        expected = expected_all[keep].tolist()
        observed = totals[keep].tolist()

    report = _gof(observed, expected, threshold)
    logger.debug(
        f"GOF {mode.value}: n={n}, s={s}, replicates={replicates}, "
        f"statistic={report.statistic:.3f}, dof={report.dof}, p={report.p_value:.4g}"
    )
    return report


def gof_poisson(
    pairs: Iterable[Tuple[int, int]],
    lam: float,
    threshold: float = settings.POOLING_THRESHOLD,
) -> GofReport:
    """Pooled chi-square of (value, count) pairs against the exact Poisson(lam) pmf"""
    observed_by_value: Dict[int, int] = {}
    for value, count in pairs:
        observed_by_value[int(value)] = observed_by_value.get(int(value), 0) + int(count)
    s = sum(observed_by_value.values())
    if not s:
        return GofReport(statistic=0.0, dof=0, p_value=1.0, bins_pooled=0)

    lo, hi = min(observed_by_value), max(observed_by_value)
    if lo < 0:
        return _impossible(1)
    ks = np.arange(lo, hi + 1, dtype=float)
    expected = s * np.exp(xlogy(ks, lam) - lam - gammaln(ks + 1.0))
    # Unobserved tails fold into the edge bins
    if lo > 0:
        expected[0] += s * pdtr(lo - 1, lam)
    expected[-1] += s * pdtrc(hi, lam)
    observed = [observed_by_value.get(k, 0) for k in range(lo, hi + 1)]
    return _gof(observed, expected.tolist(), threshold)


def seeds_rule(p_values: Sequence[float], alpha: float = settings.VERIFY_ALPHA, required: Optional[int] = None) -> bool:
    """True when at least ``required`` seeds (default four in five) have p above alpha"""
    if required is None:
        required = max(1, math.ceil(0.8 * len(p_values)))
    return sum(1 for p in p_values if p > alpha) >= required


# ---------------------------------------------------------------------------
# Suite
# ---------------------------------------------------------------------------

def default_cases(
    replicates: int = settings.VERIFY_REPLICATES,
    random_vectors: int = 10,
    random_replicates: Optional[int] = None,
    case_seed: int = 2024,
) -> List[VerifyCase]:
    """The headline three-element case plus random five-element vectors at s = 4"""
    cases = [VerifyCase(name="p=[0.2,0.3,0.5] s=3", weights=[0.2, 0.3, 0.5], s=3, replicates=replicates)]
    generator = np.random.Generator(np.random.PCG64(case_seed))
    for k in range(random_vectors):
        raw = generator.random(5) + 1e-3
        weights = (raw / raw.sum()).tolist()
        cases.append(
            VerifyCase(name=f"random-{k} s=4", weights=weights, s=4, replicates=random_replicates or replicates)
        )
    return cases


def run_verify_suite(
    algos: Sequence[str],
    seeds: Sequence[int],
    cases: Optional[List[VerifyCase]] = None,
    alpha: float = settings.VERIFY_ALPHA,
    config: Optional[HybridConfig] = None,
    jobs: int = 1,
) -> List[CaseReport]:
    """Exact GOF for every (sampler, case) pair under the seeds rule"""
    cases = cases if cases is not None else default_cases()
    required = max(1, math.ceil(0.8 * len(seeds)))
    reports: List[CaseReport] = []
    for algo in algos:
        runner = resolve_runner(algo)
        for case in cases:
            used_seeds: List[int] = []
            p_values: List[float] = []
            for seed in seeds:
                report = gof_multinomial(
                    runner, case.weights, case.s, case.replicates, CountingRng.seeded(seed), config=config, jobs=jobs
                )
                used_seeds.append(seed)
                p_values.append(report.p_value)
                passes = sum(1 for p in p_values if p > alpha)
                failures = len(p_values) - passes
                # Decided early once the outcome can no longer change
                if passes >= required or failures > len(seeds) - required:
                    break
            passed = seeds_rule(p_values, alpha, required)
            reports.append(
                CaseReport(algorithm=str(algo), case=case.name, seeds=used_seeds, p_values=p_values, passed=passed)
            )
            log = logger.info if passed else logger.error
            log(f"{'✅' if passed else '❌'} {algo} on {case.name}: p-values {[round(p, 4) for p in p_values]}")
    return reports
