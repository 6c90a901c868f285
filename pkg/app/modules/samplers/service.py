"""
Weighted sampling with replacement.

Every position-based sampler uses one element-selection convention: with
cumulative boundaries S_-1 = 0 and S_i = p_0 + ... + p_i, a position x picks
the element i with x in (S_{i-1}, S_i]. Zero-width elements can never be
picked.

The streaming samplers (online beta, conditional binomial, hybrid) read each
weight once, in order, and flush the pending emission for an element before
pulling the next weight, so results reach the sink as soon as they are final.
"""
import math
from typing import Callable, Dict, List, Optional

import numpy as np

from ...config.my_settings import settings
from ...utils.my_logger import get_logger
from ..rng_core.error_models import DomainError
from ..rng_core.model import CountingRng, KahanAccumulator
from ..rng_core.service import beta_tail_step, binomial_draw
from ..stream_api.error_models import StreamUnderflowError
from ..stream_api.model import (
    CountsRepresentation,
    OutputMode,
    SampleCounts,
    SampleSink,
    WeightStream,
)
from ..stream_api.service import make_collector, stream_from_list
from .error_models import InvalidSampleSizeError, UnknownSamplerError
from .model import AliasTable, HybridConfig, HybridCursor, SampleResult, SamplerName, WalkStats

logger = get_logger("SAMPLERS_SERVICE")


class _Emitter:
    """Coalesces emissions for the current element until it is final"""

    __slots__ = ("sink", "index", "count")

    def __init__(self, sink: SampleSink):
        self.sink = sink
        self.index = -1
        self.count = 0

    def add(self, index: int, multiplicity: int) -> None:
        if index != self.index:
            self.flush()
            self.index = index
        self.count += multiplicity

    def flush(self) -> None:
        if self.count:
            self.sink.accept(self.index, self.count)
            self.count = 0

    def close(self) -> None:
        self.flush()
        self.sink.close()


def _check_sample_size(s: int) -> None:
    if isinstance(s, bool) or not isinstance(s, (int, np.integer)) or s < 0:
        raise InvalidSampleSizeError(s=s)


def conditional_probability(span: float, residual: float, tolerance: float = settings.CLAMP_TOLERANCE) -> float:
    """
    Probability that a point uniform on the residual segment falls in ``span``.

    When rounding lets the span reach or pass the residual mass the answer is
    1, provided the overshoot is within ``tolerance`` of absolute mass. A larger
    overshoot means the weights do not describe a distribution.
    """
    if span <= 0.0:
        return 0.0
    if span >= residual:
        if span - residual > tolerance:
            raise DomainError(
                f"Element mass {span!r} exceeds the residual mass {residual!r} beyond tolerance",
                parameter="p",
                value=span / residual if residual > 0 else math.inf,
            )
        return 1.0
    return span / residual


def _settle_residual(
    emitter: _Emitter,
    stats: WalkStats,
    remaining: int,
    consumed_mass: float,
    last_positive: int,
    elements: int,
    tolerance: float,
) -> None:
    """
    Finite stream ran out with samples left: give them to the last element or fail.

    The last element may already have been emitted, in which case its index
    is emitted again right after.
    """
    if last_positive < 0 or 1.0 - consumed_mass > tolerance:
        raise StreamUnderflowError(
            f"Stream ended after {elements} elements with {remaining} samples left "
            f"and consumed mass {consumed_mass!r}",
            remaining=remaining,
            consumed_mass=consumed_mass,
            elements=elements,
        )
    logger.warning(
        f"⚠️ Stream ended with {remaining} samples left (mass deficit {1.0 - consumed_mass:.3e}); "
        f"assigning them to element {last_positive}"
    )
    emitter.add(last_positive, remaining)
    stats.residual_assigned += remaining


def _probabilities(weights: List[float], total: Optional[float], tolerance: float) -> List[float]:
    stream = stream_from_list(weights, total=total, tolerance=tolerance)
    return [stream.next() for _ in range(len(stream))]


def _emit_counts(counts: List[int], sink: Optional[SampleSink]) -> None:
    if sink is None:
        return
    for index, count in enumerate(counts):
        if count:
            sink.accept(index, count)
    sink.close()


def _dense(counts: List[int]) -> SampleCounts:
    return SampleCounts(representation=CountsRepresentation.DENSE, dense=counts, total=sum(counts))


def _cumulative(probs: List[float]) -> List[float]:
    acc = KahanAccumulator()
    boundaries = []
    for p in probs:
        acc.add(p)
        boundaries.append(acc.sum)
    return boundaries


def _last_positive(probs: List[float]) -> int:
    for index in range(len(probs) - 1, -1, -1):
        if probs[index] > 0.0:
            return index
    return -1


# ---------------------------------------------------------------------------
# Finite-population baselines
# ---------------------------------------------------------------------------

def sample_naive(
    weights: List[float],
    s: int,
    rng: CountingRng,
    sink: Optional[SampleSink] = None,
    total: Optional[float] = None,
    tolerance: float = settings.CLAMP_TOLERANCE,
) -> SampleCounts:
    """Cumulative-sum table plus one binary search per sample"""
    _check_sample_size(s)
    probs = _probabilities(weights, total, tolerance)
    n = len(probs)
    if s and not n:
        raise StreamUnderflowError("Cannot sample from an empty population", remaining=s, consumed_mass=0.0)
    if not s:
        counts = [0] * n
        _emit_counts(counts, sink)
        return _dense(counts)

    boundaries = np.asarray(_cumulative(probs))
    positions = rng.uniforms(s)
    picks = np.searchsorted(boundaries, positions, side="left")
    # x == 0 lies in no interval; send it to the first positive-width element
    zero = positions == 0.0
    if zero.any():
        picks[zero] = np.searchsorted(boundaries, 0.0, side="right")
    # Positions past a total that fell short of 1 by rounding
    picks[picks >= n] = _last_positive(probs)
    counts = np.bincount(picks, minlength=n).tolist()
    _emit_counts(counts, sink)
    return _dense(counts)


def sample_sorted_uniforms(
    weights: List[float],
    s: int,
    rng: CountingRng,
    sink: Optional[SampleSink] = None,
    total: Optional[float] = None,
    tolerance: float = settings.CLAMP_TOLERANCE,
) -> SampleCounts:
    """Materialize s uniforms, sort them, then merge-scan the cumulative weights"""
    _check_sample_size(s)
    probs = _probabilities(weights, total, tolerance)
    n = len(probs)
    if s and not n:
        raise StreamUnderflowError("Cannot sample from an empty population", remaining=s, consumed_mass=0.0)

    positions = rng.uniforms(s).tolist()
    positions.sort()

    counts = [0] * n
    cum = KahanAccumulator()
    index = -1
    weight = 0.0
    last_positive = _last_positive(probs)
    for x in positions:
        while (cum.sum < x or weight == 0.0) and index < n - 1:
            index += 1
            weight = probs[index]
            cum.add(weight)
        # Past the rounded total: the residual belongs to the last positive element
        pick = last_positive if (cum.sum < x or weight == 0.0) else index
        counts[pick] += 1
    _emit_counts(counts, sink)
    return _dense(counts)


# ---------------------------------------------------------------------------
# Streaming samplers
# ---------------------------------------------------------------------------

def sample_online_beta(
    stream: WeightStream,
    s: int,
    rng: CountingRng,
    sink: SampleSink,
    tolerance: float = settings.CLAMP_TOLERANCE,
) -> WalkStats:
    """
    Generate the sorted uniforms on the fly: each next order statistic is the
    previous one plus a rescaled Beta(1, i) spacing, i counting down from s.
    Exactly s uniform draws.
    """
    _check_sample_size(s)
    stats = WalkStats()
    emitter = _Emitter(sink)
    cum = KahanAccumulator()
    index = -1
    weight = 0.0
    last_positive = -1
    x = 0.0

    for i in range(s, 0, -1):
        x += beta_tail_step(rng.next_uniform(), i) * (1.0 - x)
        stats.beta_steps += 1
        while cum.sum < x or weight == 0.0:
            emitter.flush()
            w = stream.next()
            if w is None:
                _settle_residual(emitter, stats, i, cum.sum, last_positive, index + 1, tolerance)
                emitter.close()
                stats.elements_pulled = index + 1
                return stats
            index += 1
            weight = w
            cum.add(w)
            if w > 0.0:
                last_positive = index
        emitter.add(index, 1)

    emitter.close()
    stats.elements_pulled = index + 1
    logger.debug(f"Online beta sampler: s={s}, elements pulled={index + 1}")
    return stats


def sample_conditional_binomial(
    stream: WeightStream,
    s: int,
    rng: CountingRng,
    sink: SampleSink,
    tolerance: float = settings.CLAMP_TOLERANCE,
) -> WalkStats:
    """One Binomial(remaining, p_i / (1 - consumed)) draw per element until s is used up"""
    _check_sample_size(s)
    stats = WalkStats()
    emitter = _Emitter(sink)
    consumed = KahanAccumulator()
    remaining = s
    index = -1
    last_positive = -1

    while remaining > 0:
        emitter.flush()
        w = stream.next()
        if w is None:
            _settle_residual(emitter, stats, remaining, consumed.sum, last_positive, index + 1, tolerance)
            break
        index += 1
        if w > 0.0:
            last_positive = index
        p = conditional_probability(w, 1.0 - consumed.sum, tolerance)
        taken = binomial_draw(remaining, p, rng, tolerance)
        stats.binomial_steps += 1
        if taken:
            emitter.add(index, taken)
            remaining -= taken
        consumed.add(w)

    emitter.close()
    stats.elements_pulled = index + 1
    return stats


def sample_hybrid(
    stream: WeightStream,
    s: int,
    rng: CountingRng,
    sink: SampleSink,
    config: Optional[HybridConfig] = None,
    tolerance: float = settings.CLAMP_TOLERANCE,
) -> WalkStats:
    """
    Walk the unit segment, switching between beta and binomial steps.

    In the current element the expected number of remaining samples left in
    its unconsumed part is ``(cum_prob - position) * remaining / (1 - position)``.
    Below ``theta`` (and under the beta-run cap) the walk takes a beta step to
    the next sorted uniform, emitting the element it lands in. Otherwise it
    draws how many of the remaining samples fall in the rest of the element
    and jumps to its right boundary. The check repeats after every landing.
    """
    _check_sample_size(s)
    config = config or HybridConfig.from_settings()
    theta = config.theta
    limit = config.beta_run_limit
    stats = WalkStats()
    emitter = _Emitter(sink)
    cursor = HybridCursor(remaining=s)
    cum = cursor.cum_prob
    weight = 0.0
    last_positive = -1
    last_mode = None

    def pull() -> bool:
        nonlocal weight, last_positive
        emitter.flush()
        w = stream.next()
        if w is None:
            _settle_residual(
                emitter, stats, cursor.remaining, cum.sum, last_positive, cursor.index + 1, tolerance
            )
            cursor.remaining = 0
            return False
        cursor.index += 1
        cursor.beta_run = 0
        cum.add(w)
        weight = w
        if w > 0.0:
            last_positive = cursor.index
        return True

    while cursor.remaining > 0:
        if not pull():
            break
        if weight == 0.0:
            continue

        while cursor.remaining > 0:
            position = cursor.current_position
            p = conditional_probability(cum.sum - position, 1.0 - position, tolerance)
            expected = p * cursor.remaining

            if expected < theta and cursor.beta_run < limit:
                if last_mode == "binomial":
                    stats.mode_switches += 1
                last_mode = "beta"
                step = beta_tail_step(rng.next_uniform(), cursor.remaining)
                cursor.current_position = position + step * (1.0 - position)
                stats.beta_steps += 1
                if cum.sum < cursor.current_position:
                    while cum.sum < cursor.current_position or weight == 0.0:
                        if not pull():
                            break
                    if cursor.remaining == 0:
                        break
                cursor.beta_run += 1
                emitter.add(cursor.index, 1)
                cursor.remaining -= 1
                continue

            if last_mode == "beta":
                stats.mode_switches += 1
            last_mode = "binomial"
            if cursor.beta_run >= limit:
                stats.forced_binomial_steps += 1
            taken = binomial_draw(cursor.remaining, p, rng, tolerance)
            stats.binomial_steps += 1
            if taken:
                emitter.add(cursor.index, taken)
                cursor.remaining -= taken
            cursor.current_position = cum.sum
            break

    emitter.close()
    stats.elements_pulled = cursor.index + 1
    logger.debug(
        f"Hybrid sampler: s={s}, elements={stats.elements_pulled}, beta={stats.beta_steps}, "
        f"binomial={stats.binomial_steps}, forced={stats.forced_binomial_steps}"
    )
    return stats


# ---------------------------------------------------------------------------
# Walker alias baseline
# ---------------------------------------------------------------------------

def alias_build(
    weights: List[float],
    total: Optional[float] = None,
    tolerance: float = settings.CLAMP_TOLERANCE,
) -> AliasTable:
    """Vose's construction: one pass with small/large worklists"""
    probs = _probabilities(weights, total, tolerance)
    n = len(probs)
    scaled = [p * n for p in probs]
    prob = [0.0] * n
    alias = list(range(n))
    small = [i for i, w in enumerate(scaled) if w < 1.0]
    large = [i for i, w in enumerate(scaled) if w >= 1.0]

    while small and large:
        lo = small.pop()
        hi = large.pop()
        prob[lo] = scaled[lo]
        alias[lo] = hi
        scaled[hi] -= 1.0 - scaled[lo]
        if scaled[hi] < 1.0:
            small.append(hi)
        else:
            large.append(hi)

    # Leftovers are full columns up to rounding; zero-width ones must stay unselectable
    fallback = _last_positive(probs)
    for i in large:
        prob[i] = 1.0
    for i in small:
        if probs[i] > 0.0:
            prob[i] = 1.0
        else:
            prob[i] = 0.0
            alias[i] = fallback
    return AliasTable(n=n, prob=prob, alias=alias)


def alias_mixture(table: AliasTable) -> List[float]:
    """Probabilities implied by a table: (prob[i] + sum over alias[j] == i of (1 - prob[j])) / n"""
    implied = list(table.prob)
    for j in range(table.n):
        implied[table.alias[j]] += 1.0 - table.prob[j]
    return [v / table.n for v in implied]


def alias_draw(table: AliasTable, rng: CountingRng) -> int:
    """Two uniforms: one picks the column, one the coin inside it"""
    column = int(rng.next_uniform() * table.n)
    if column >= table.n:
        column = table.n - 1
    if rng.next_uniform() < table.prob[column]:
        return column
    return table.alias[column]


def sample_alias(
    weights: List[float],
    s: int,
    rng: CountingRng,
    sink: Optional[SampleSink] = None,
    total: Optional[float] = None,
    tolerance: float = settings.CLAMP_TOLERANCE,
) -> SampleCounts:
    _check_sample_size(s)
    table = alias_build(weights, total=total, tolerance=tolerance)
    if s and not table.n:
        raise StreamUnderflowError("Cannot sample from an empty population", remaining=s, consumed_mass=0.0)
    counts = [0] * table.n
    for _ in range(s):
        counts[alias_draw(table, rng)] += 1
    _emit_counts(counts, sink)
    return _dense(counts)


# ---------------------------------------------------------------------------
# Registry shared by the CLI, HTTP routes and the verification suite
# ---------------------------------------------------------------------------

def _run_naive(weights, s, rng, sink, config, total, tolerance) -> WalkStats:
    sample_naive(weights, s, rng, sink, total=total, tolerance=tolerance)
    return WalkStats(elements_pulled=len(weights))


def _run_sorted(weights, s, rng, sink, config, total, tolerance) -> WalkStats:
    sample_sorted_uniforms(weights, s, rng, sink, total=total, tolerance=tolerance)
    return WalkStats(elements_pulled=len(weights))


def _run_alias(weights, s, rng, sink, config, total, tolerance) -> WalkStats:
    sample_alias(weights, s, rng, sink, total=total, tolerance=tolerance)
    return WalkStats(elements_pulled=len(weights))


def _run_beta(weights, s, rng, sink, config, total, tolerance) -> WalkStats:
    stream = stream_from_list(weights, total=total, tolerance=tolerance)
    return sample_online_beta(stream, s, rng, sink, tolerance=tolerance)


def _run_binom(weights, s, rng, sink, config, total, tolerance) -> WalkStats:
    stream = stream_from_list(weights, total=total, tolerance=tolerance)
    return sample_conditional_binomial(stream, s, rng, sink, tolerance=tolerance)


def _run_hybrid(weights, s, rng, sink, config, total, tolerance) -> WalkStats:
    stream = stream_from_list(weights, total=total, tolerance=tolerance)
    return sample_hybrid(stream, s, rng, sink, config=config, tolerance=tolerance)


SAMPLERS: Dict[SamplerName, Callable[..., WalkStats]] = {
    SamplerName.NAIVE: _run_naive,
    SamplerName.SORTED: _run_sorted,
    SamplerName.BETA: _run_beta,
    SamplerName.BINOM: _run_binom,
    SamplerName.HYBRID: _run_hybrid,
    SamplerName.ALIAS: _run_alias,
}


def resolve_sampler(name: str | SamplerName) -> SamplerName:
    try:
        return SamplerName(name)
    except ValueError:
        raise UnknownSamplerError(
            f"Unknown sampler {name!r}", name=str(name), available=[m.value for m in SamplerName]
        )


def run_sampler(
    name: str | SamplerName,
    weights: List[float],
    s: int,
    rng: CountingRng,
    output: OutputMode | str = OutputMode.DENSE,
    total: Optional[float] = None,
    config: Optional[HybridConfig] = None,
    tolerance: float = settings.CLAMP_TOLERANCE,
) -> SampleResult:
    """Run one named sampler over a finite weight list and materialize its output"""
    algorithm = resolve_sampler(name)
    output = OutputMode(output)
    sink = make_collector(output, n=len(weights))
    draws_before = rng.draws
    stats = SAMPLERS[algorithm](weights, s, rng, sink, config, total, tolerance)
    draws = rng.draws - draws_before

    collected = sink.result()
    logger.info(
        f"🎲 {algorithm.value}: n={len(weights)}, s={s}, output={output.value}, "
        f"draws={draws}, pulled={stats.elements_pulled}"
    )
    return SampleResult(
        algorithm=algorithm,
        n=len(weights),
        s=s,
        output_mode=output,
        counts=collected if output != OutputMode.ARRAY else None,
        array=collected if output == OutputMode.ARRAY else None,
        rng_draws=draws,
        elements_pulled=stats.elements_pulled,
        stats={
            "beta_steps": stats.beta_steps,
            "binomial_steps": stats.binomial_steps,
            "forced_binomial_steps": stats.forced_binomial_steps,
            "mode_switches": stats.mode_switches,
            "residual_assigned": stats.residual_assigned,
        },
    )
