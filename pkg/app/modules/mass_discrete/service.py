"""
Mass sampling from discrete distributions.

The support is enumerated (preferably in decreasing probability order) and
fed as a weight stream to the hybrid sampler, which stops pulling as soon as
the cumulative mass covers the whole sample.
"""
import heapq
import itertools
import math
import time
from typing import Any, Callable, Iterable, List, Optional, Tuple

import numpy as np
from scipy.special import gammaln, xlogy

from ...config.my_settings import settings
from ...utils.my_logger import get_logger
from ..rng_core.error_models import DomainError
from ..rng_core.model import CountingRng
from ..samplers.model import HybridConfig
from ..samplers.service import sample_hybrid
from ..stream_api.model import CallbackSink, EnumeratorWeightStream
from .error_models import EnumeratorError
from .model import MassSample, MassSampleSummary, PmfEnumerator, SupportPoint

logger = get_logger("MASS_DISCRETE_SERVICE")

Pmf = Callable[[Any], float]


# ---------------------------------------------------------------------------
# Probability mass functions
# ---------------------------------------------------------------------------

def _is_count(k: Any) -> bool:
    return isinstance(k, (int, np.integer)) and not isinstance(k, bool) and k >= 0


def poisson_pmf(lam: float) -> Pmf:
    """Poisson(lam) pmf evaluated in log space; zero off the nonnegative integers"""
    if not (lam > 0.0) or math.isinf(lam):
        raise DomainError("Poisson rate must be positive and finite", parameter="lam", value=lam)

    def pmf(k: Any) -> float:
        if not _is_count(k):
            return 0.0
        return float(np.exp(xlogy(k, lam) - lam - gammaln(k + 1.0)))

    return pmf


def poisson_mode(lam: float) -> int:
    return int(math.floor(lam))


def binomial_pmf(n: int, p: float) -> Pmf:
    if n < 0 or not (0.0 <= p <= 1.0):
        raise DomainError("Binomial parameters out of range", parameter="n, p", value=(n, p))
    log_norm = gammaln(n + 1.0)

    def pmf(k: Any) -> float:
        if not _is_count(k) or k > n:
            return 0.0
        return float(np.exp(
            log_norm - gammaln(k + 1.0) - gammaln(n - k + 1.0) + xlogy(k, p) + xlogy(n - k, 1.0 - p)
        ))

    return pmf


def binomial_mode(n: int, p: float) -> int:
    return min(n, int(math.floor((n + 1) * p)))


# ---------------------------------------------------------------------------
# Support enumerators
# ---------------------------------------------------------------------------

class UnimodalWalker(PmfEnumerator):
    """Two cursors expanding from the mode; the larger side goes first, ties to the lower value"""

    def __init__(self, pmf: Pmf, mode: int):
        super().__init__()
        mass = pmf(mode)
        if not (mass > 0.0):
            raise DomainError("pmf must be positive at the mode", parameter="mode", value=mode)
        # a tie with the left neighbour starts the walk one step lower
        left_mass = pmf(mode - 1)
        while left_mass > 0.0 and left_mass >= mass:
            mode, mass = mode - 1, left_mass
            left_mass = pmf(mode - 1)
        self._pmf = pmf
        self._mode = mode
        self._mode_mass = mass
        self._left = mode - 1
        self._right = mode + 1
        self._left_mass = left_mass
        self._right_mass = pmf(self._right)
        self._started = False

    def _advance(self) -> Optional[SupportPoint]:
        if not self._started:
            self._started = True
            return self._mode, self._mode_mass

        left, right = self._left_mass, self._right_mass
        if left <= 0.0 and right <= 0.0:
            return None
        if left >= right:
            value, mass = self._left, left
            self._left -= 1
            self._left_mass = self._pmf(self._left)
        else:
            value, mass = self._right, right
            self._right += 1
            self._right_mass = self._pmf(self._right)
        return value, mass


class DijkstraWalker(PmfEnumerator):
    """Best-first traversal by pmf from ``start``; equal masses leave in insertion order"""

    def __init__(self, pmf: Pmf, neighbors: Callable[[Any], Iterable[Any]], start: Any):
        super().__init__()
        self._pmf = pmf
        self._neighbors = neighbors
        self._counter = itertools.count()
        self._queue: List[Tuple[float, int, Any]] = []
        self._visited = {start}
        mass = pmf(start)
        if mass > 0.0:
            heapq.heappush(self._queue, (-mass, next(self._counter), start))

    def _advance(self) -> Optional[SupportPoint]:
        if not self._queue:
            return None
        neg_mass, _, value = heapq.heappop(self._queue)
        for neighbor in self._neighbors(value):
            if neighbor in self._visited:
                continue
            self._visited.add(neighbor)
            mass = self._pmf(neighbor)
            if mass > 0.0:
                heapq.heappush(self._queue, (-mass, next(self._counter), neighbor))
        return value, -neg_mass

    @property
    def frontier(self) -> int:
        return len(self._queue)


class ValidatingEnumerator(PmfEnumerator):
    """Rejects masses that are not positive and finite"""

    def __init__(self, inner: PmfEnumerator):
        super().__init__()
        self._inner = inner

    def _advance(self) -> Optional[SupportPoint]:
        item = self._inner.next()
        if item is None:
            return None
        value, mass = item
        if not (mass > 0.0) or math.isinf(mass):
            raise EnumeratorError(f"Mass {mass!r} for support point {value!r} is not positive", value=value, mass=mass)
        return item


def unimodal_walker(pmf: Pmf, mode: int) -> UnimodalWalker:
    return UnimodalWalker(pmf, mode)


def dijkstra_walker(pmf: Pmf, neighbors: Callable[[Any], Iterable[Any]], start: Any) -> DijkstraWalker:
    return DijkstraWalker(pmf, neighbors, start)


def integer_neighbors(k: int) -> List[int]:
    return [k - 1, k + 1]


# ---------------------------------------------------------------------------
# Mass sampling
# ---------------------------------------------------------------------------

def mass_sample(
    enumerator: PmfEnumerator,
    s: int,
    rng: CountingRng,
    config: Optional[HybridConfig] = None,
    on_emit: Optional[Callable[[Any, int], None]] = None,
    tolerance: float = settings.CLAMP_TOLERANCE,
) -> MassSample:
    """
    Draw s iid variates by running the hybrid sampler over the enumerated
    support. Pairs arrive in traversal order; ``on_emit`` sees each one as
    soon as it is final.
    """
    stream = EnumeratorWeightStream(ValidatingEnumerator(enumerator))
    result = MassSample()

    def emit(index: int, count: int) -> None:
        value = stream.value_of(index)
        result.pairs.append((value, count))
        if on_emit is not None:
            on_emit(value, count)

    result.stats = sample_hybrid(stream, s, rng, CallbackSink(emit), config=config, tolerance=tolerance)
    result.support_consumed = stream.pulled
    return result


def fisher_yates_shuffle(seq: List[Any], rng: CountingRng) -> List[Any]:
    """Uniform random permutation of a copy of ``seq``"""
    items = list(seq)
    for i in range(len(items) - 1, 0, -1):
        j = min(int(rng.next_uniform() * (i + 1)), i)
        items[i], items[j] = items[j], items[i]
    return items


def mass_sample_shuffled(
    enumerator: PmfEnumerator,
    s: int,
    rng: CountingRng,
    config: Optional[HybridConfig] = None,
) -> List[Any]:
    """Materialized sample of length s in random order (no longer online)"""
    sample = mass_sample(enumerator, s, rng, config=config)
    expanded = [value for value, count in sample.pairs for _ in range(count)]
    return fisher_yates_shuffle(expanded, rng)


def summarize(sample: MassSample, wall_ns: int = 0, rng_draws: int = 0) -> MassSampleSummary:
    s = sample.size
    if s:
        values = np.array([value for value, _ in sample.pairs], dtype=float)
        counts = np.array([count for _, count in sample.pairs], dtype=float)
        mean = float(np.dot(values, counts) / s)
        spread = float(np.dot(counts, (values - mean) ** 2))
        variance = spread / (s - 1) if s > 1 else 0.0
    else:
        mean = variance = 0.0
    return MassSampleSummary(
        s=s,
        mean=mean,
        variance=variance,
        support_consumed=sample.support_consumed,
        wall_ns=wall_ns,
        rng_draws=rng_draws,
    )


def mass_sample_poisson(
    lam: float,
    s: int,
    rng: CountingRng,
    config: Optional[HybridConfig] = None,
) -> Tuple[MassSample, MassSampleSummary]:
    """Poisson(lam) mass sample over the unimodal walker, timed around the sampling call"""
    walker = unimodal_walker(poisson_pmf(lam), poisson_mode(lam))
    draws_before = rng.draws
    start = time.perf_counter_ns()
    sample = mass_sample(walker, s, rng, config=config)
    wall_ns = time.perf_counter_ns() - start
    summary = summarize(sample, wall_ns=wall_ns, rng_draws=rng.draws - draws_before)
    logger.info(
        f"🎲 Poisson mass sample: lam={lam}, s={s}, mean={summary.mean:.4f}, "
        f"variance={summary.variance:.4f}, support={summary.support_consumed}, {wall_ns / 1e6:.1f} ms"
    )
    return sample, summary
