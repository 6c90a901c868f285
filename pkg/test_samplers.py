"""
Tests for the six samplers: conservation, zero-weight exclusion, draw-count
contracts, the online contract and the hybrid walk's mode switching.
"""
import math

import numpy as np
import pytest

from app.modules.bench_cli import PopulationSpec, gen_population
from app.modules.rng_core import CountingRng, DomainError
from app.modules.samplers import (
    HybridConfig,
    InvalidConfigError,
    InvalidSampleSizeError,
    SAMPLERS,
    SamplerName,
    UnknownSamplerError,
    alias_build,
    alias_draw,
    alias_mixture,
    conditional_probability,
    run_sampler,
    sample_alias,
    sample_conditional_binomial,
    sample_hybrid,
    sample_naive,
    sample_online_beta,
    sample_sorted_uniforms,
)
from app.modules.stream_api import (
    CoalescingSink,
    DenseCollector,
    InstrumentedStream,
    RecordingSink,
    SampleCounts,
    SparseCollector,
    StreamUnderflowError,
    stream_from_generator,
    stream_from_list,
)

ALL = [name.value for name in SamplerName]
STREAMING = {
    "beta": sample_online_beta,
    "binom": sample_conditional_binomial,
    "hybrid": sample_hybrid,
}


def geometric(k):
    return 2.0 ** (-k - 1)


def random_weights(n, seed, floor=0.01):
    raw = np.random.Generator(np.random.PCG64(seed)).random(n) + floor
    return (raw / raw.sum()).tolist()


def dense_counts(name, weights, s, seed, **kwargs):
    return run_sampler(name, weights, s, CountingRng.seeded(seed), **kwargs).counts.dense


# ---------------------------------------------------------------------------
# Shared contracts
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", ALL)
def test_single_element_population(name):
    assert dense_counts(name, [1.0], 5, seed=1) == [5]


@pytest.mark.parametrize("name", ALL)
@pytest.mark.parametrize("weights", [[0.5, 0.0, 0.5], [0.0, 1.0], [1.0, 0.0], [0.0, 0.3, 0.0, 0.0, 0.7, 0.0]])
def test_zero_weight_elements_never_selected(name, weights):
    for seed in range(10):
        counts = dense_counts(name, weights, 50, seed=seed)
        assert sum(counts) == 50
        assert all(c == 0 for c, w in zip(counts, weights) if w == 0.0)


@pytest.mark.parametrize("name", ALL)
def test_empty_sample(name):
    result = run_sampler(name, [0.2, 0.3, 0.5], 0, CountingRng.seeded(1))
    assert result.counts.dense == [0, 0, 0]
    assert result.rng_draws == 0


@pytest.mark.parametrize("name", list(STREAMING))
def test_empty_sample_pulls_nothing(name):
    stream = InstrumentedStream(stream_from_generator(geometric))
    STREAMING[name](stream, 0, CountingRng.seeded(1), SparseCollector())
    assert stream.pulled == 0


@pytest.mark.parametrize("name", ALL)
@pytest.mark.parametrize("n, s", [(5, 3), (40, 1000), (1000, 40), (300, 300)])
def test_conservation(name, n, s):
    weights = random_weights(n, seed=n + s)
    for seed in (1, 2, 3):
        counts = dense_counts(name, weights, s, seed=seed)
        assert len(counts) == n
        assert sum(counts) == s


@pytest.mark.parametrize("name", ALL)
def test_declared_total(name):
    counts = dense_counts(name, [2.0, 3.0, 5.0], 100, seed=4, total=10.0)
    assert sum(counts) == 100


@pytest.mark.parametrize("name", ALL)
@pytest.mark.parametrize("s", [-1, 2.5, True])
def test_invalid_sample_size(name, s):
    with pytest.raises(InvalidSampleSizeError):
        run_sampler(name, [1.0], s, CountingRng.seeded(1))


def test_unknown_sampler():
    with pytest.raises(UnknownSamplerError) as exc:
        run_sampler("bogus", [1.0], 1, CountingRng.seeded(1))
    assert exc.value.error_detail.code == "SAMP_002"
    assert "hybrid" in exc.value.available


def test_registry_covers_every_name():
    assert set(SAMPLERS) == set(SamplerName)


@pytest.mark.parametrize("name", ALL)
def test_array_output_histograms_to_dense(name):
    weights = random_weights(20, seed=3)
    array = run_sampler(name, weights, 500, CountingRng.seeded(8), output="array").array
    dense = dense_counts(name, weights, 500, seed=8)
    assert len(array) == 500
    assert array == sorted(array)
    assert SampleCounts.histogram(array, 20).dense == dense


@pytest.mark.parametrize("name", ALL)
def test_sparse_output(name):
    weights = random_weights(20, seed=3)
    sparse = run_sampler(name, weights, 500, CountingRng.seeded(8), output="sparse").counts
    assert sparse.to_dense(20) == dense_counts(name, weights, 500, seed=8)
    assert all(c >= 1 for c in sparse.sparse.values())


def test_naive_and_sorted_agree_for_the_same_uniforms():
    weights = [0.0, 0.1, 0.0, 0.25, 0.15, 0.5, 0.0]
    for seed in range(5):
        rng_a, rng_b = CountingRng.seeded(seed), CountingRng.seeded(seed)
        naive = sample_naive(weights, 1000, rng_a)
        merged = sample_sorted_uniforms(weights, 1000, rng_b)
        assert naive.dense == merged.dense
        assert rng_a.draws == rng_b.draws == 1000


def test_position_zero_selects_first_positive_element():
    weights = [0.0, 0.4, 0.6]
    assert sample_naive(weights, 1, CountingRng.scripted([0.0])).dense == [0, 1, 0]
    assert sample_sorted_uniforms(weights, 1, CountingRng.scripted([0.0])).dense == [0, 1, 0]


def test_boundary_position_belongs_to_the_left_element():
    assert sample_naive([0.5, 0.5], 1, CountingRng.scripted([0.5])).dense == [1, 0]
    assert sample_sorted_uniforms([0.5, 0.5], 1, CountingRng.scripted([0.5])).dense == [1, 0]


def test_empty_population_with_samples_underflows():
    with pytest.raises(StreamUnderflowError):
        sample_naive([], 3, CountingRng.seeded(1))


# ---------------------------------------------------------------------------
# Online beta sampler
# ---------------------------------------------------------------------------

def test_online_beta_hand_trace():
    x1 = -math.expm1(math.log1p(-0.75) / 2)
    x2 = x1 + (-math.expm1(math.log1p(-0.5) / 1)) * (1.0 - x1)
    expected = [0, 0]
    for x in (x1, x2):
        expected[0 if x <= 0.5 else 1] += 1

    sink = DenseCollector(2)
    rng = CountingRng.scripted([0.75, 0.5])
    sample_online_beta(stream_from_list([0.5, 0.5]), 2, rng, sink)
    assert sink.counts == expected
    assert rng.draws == 2


def test_online_beta_makes_exactly_s_draws():
    weights = random_weights(500, seed=1)
    for s in (1, 37, 2000):
        rng = CountingRng.seeded(s)
        stats = sample_online_beta(stream_from_list(weights), s, rng, DenseCollector(500))
        assert rng.draws == s
        assert stats.beta_steps == s


def test_online_beta_over_infinite_stream():
    stream = InstrumentedStream(stream_from_generator(geometric))
    sink = SparseCollector()
    sample_online_beta(stream, 100, CountingRng.seeded(5), sink)
    assert sink.total == 100
    assert 0 < stream.pulled < 200
    assert not stream.exhausted


# ---------------------------------------------------------------------------
# Conditional binomial sampler
# ---------------------------------------------------------------------------

def test_conditional_binomial_single_draw_for_point_mass():
    sink = DenseCollector(1)
    stats = sample_conditional_binomial(stream_from_list([1.0]), 10**6, CountingRng.seeded(1), sink)
    assert sink.counts == [10**6]
    assert stats.binomial_steps == 1


def test_conditional_binomial_at_most_one_draw_per_element():
    weights = random_weights(200, seed=2)
    stats = sample_conditional_binomial(stream_from_list(weights), 10**5, CountingRng.seeded(2), DenseCollector(200))
    assert stats.binomial_steps <= 200


def test_conditional_probability_clamp():
    assert conditional_probability(1.0 + 1e-12, 1.0) == 1.0
    assert conditional_probability(0.7, 0.7) == 1.0
    assert conditional_probability(0.0, 0.5) == 0.0
    assert conditional_probability(0.25, 0.5) == 0.5
    with pytest.raises(DomainError):
        conditional_probability(1.5, 1.0)


def test_last_element_takes_everything_left():
    for seed in range(20):
        sink = DenseCollector(2)
        sample_conditional_binomial(stream_from_list([0.3, 0.7]), 1000, CountingRng.seeded(seed), sink)
        assert sum(sink.counts) == 1000


# ---------------------------------------------------------------------------
# Residual mass and underflow
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", list(STREAMING))
def test_stream_ending_short_underflows(name):
    stream = stream_from_generator(lambda k: 0.25 if k < 2 else None)
    with pytest.raises(StreamUnderflowError) as exc:
        STREAMING[name](stream, 50, CountingRng.seeded(3), SparseCollector())
    assert exc.value.error_detail.code == "STREAM_003"
    assert exc.value.remaining > 0


def test_rounding_deficit_goes_to_last_element():
    stream = stream_from_generator(lambda k: [0.5, 0.5 - 1e-12][k] if k < 2 else None)
    sink = DenseCollector(2)
    stats = sample_online_beta(stream, 1, CountingRng.scripted([1.0 - 5e-13]), sink)
    assert sink.counts == [0, 1]
    assert stats.residual_assigned == 1


def test_residual_after_an_emission_repeats_the_index_back_to_back():
    def run(sink):
        stream = stream_from_generator(lambda k: [0.5, 0.5 - 1e-12, 0.0][k] if k < 3 else None)
        return sample_conditional_binomial(stream, 2, CountingRng.scripted([0.1, 1.0 - 1e-12]), sink)

    raw = RecordingSink(DenseCollector(3))
    stats = run(raw)
    assert stats.residual_assigned == 1
    assert raw.events == [("emit", 1, 1), ("emit", 1, 1)]
    assert raw.inner.counts == [0, 2, 0]

    merged = RecordingSink(DenseCollector(3))
    run(CoalescingSink(merged))
    assert merged.events == [("emit", 1, 2)]


# ---------------------------------------------------------------------------
# Hybrid sampler
# ---------------------------------------------------------------------------

def test_hybrid_point_mass_is_one_binomial_step():
    sink = DenseCollector(1)
    rng = CountingRng.seeded(1)
    stats = sample_hybrid(stream_from_list([1.0]), 10**6, rng, sink, HybridConfig())
    assert sink.counts == [10**6]
    assert stats.binomial_steps == 1
    assert stats.beta_steps == 0
    assert stats.variates == 1
    assert rng.draws <= 1


def test_hybrid_uniform_sparse_regime_is_pure_beta():
    n, s = 10**6, 10**3
    rng = CountingRng.seeded(2)
    sink = SparseCollector()
    stats = sample_hybrid(stream_from_list([1.0 / n] * n), s, rng, sink, HybridConfig())
    assert sink.total == s
    assert stats.binomial_steps == 0
    assert stats.beta_steps == s
    assert rng.draws == s


def test_hybrid_threshold_boundary_takes_binomial():
    for seed in range(10):
        sink = DenseCollector(2)
        stats = sample_hybrid(stream_from_list([0.5, 0.5]), 2, CountingRng.seeded(seed), sink, HybridConfig(theta=1.0))
        assert stats.beta_steps == 0
        assert stats.binomial_steps >= 1
        assert sum(sink.counts) == 2


def test_hybrid_beta_run_limit_forces_binomial():
    config = HybridConfig(theta=1.0, beta_run_limit=3)
    sink = DenseCollector(2)
    stats = sample_hybrid(stream_from_list([0.001, 0.999]), 100, CountingRng.scripted([1e-6] * 10), sink, config)
    assert stats.beta_steps == 3
    assert stats.forced_binomial_steps == 1
    assert stats.mode_switches >= 1
    assert sink.counts == [3, 97]


def test_hybrid_config_validation():
    with pytest.raises(InvalidConfigError):
        HybridConfig(theta=0.0)
    with pytest.raises(InvalidConfigError):
        HybridConfig(beta_run_limit=0)
    assert HybridConfig.from_settings().theta > 0


@pytest.mark.parametrize("name", list(STREAMING))
def test_online_contract(name):
    events = []
    stream = InstrumentedStream(stream_from_generator(geometric), events)
    sink = RecordingSink(SparseCollector(), events)
    STREAMING[name](stream, 1000, CountingRng.seeded(6), sink)

    pulls = [index for kind, index, *_ in events if kind == "pull"]
    assert pulls == list(range(len(pulls)))
    assert not stream.exhausted
    highest_pulled = -1
    for event in events:
        if event[0] == "pull":
            highest_pulled = event[1]
        else:
            assert event[1] == highest_pulled
    assert sink.total == 1000


@pytest.mark.parametrize(
    "kind, n, s",
    [("uniform", 10**6, 10**3), ("uniform", 10**3, 10**6), ("geometric", 10**5, 10**5)],
)
def test_hybrid_variates_bounded_by_min_n_s(kind, n, s):
    weights = gen_population(PopulationSpec(kind=kind, n=n, seed=1))
    result = run_sampler("hybrid", weights, s, CountingRng.seeded(1), output="sparse")
    variates = result.stats["beta_steps"] + result.stats["binomial_steps"]
    assert variates <= 8 * min(n, s)
    assert result.counts.total == s


def test_hybrid_adapts_to_skew():
    weights = gen_population(PopulationSpec(kind="geometric", n=10**5, seed=1))
    hybrid = run_sampler("hybrid", weights, 10**5, CountingRng.seeded(1), output="sparse")
    naive = run_sampler("naive", weights, 10**5, CountingRng.seeded(1), output="sparse")
    assert naive.rng_draws == 10**5
    assert hybrid.rng_draws < 0.05 * naive.rng_draws
    # every uniform goes to one beta or binomial step
    assert hybrid.rng_draws <= hybrid.stats["beta_steps"] + hybrid.stats["binomial_steps"]


def test_hybrid_marginals_at_scale():
    n, s = 100, 10**6
    weights = random_weights(n, seed=11)
    counts = dense_counts("hybrid", weights, s, seed=11)
    within = sum(
        abs(c - s * p) <= 4 * math.sqrt(s * p * (1 - p))
        for c, p in zip(counts, weights)
    )
    assert within >= 95


# ---------------------------------------------------------------------------
# Alias method
# ---------------------------------------------------------------------------

def test_alias_single_element():
    table = alias_build([1.0])
    assert table.prob == [1.0]
    assert table.alias == [0]
    assert alias_draw(table, CountingRng.seeded(1)) == 0


def test_alias_uniform_pair():
    assert alias_build([0.5, 0.5]).prob == [1.0, 1.0]


@pytest.mark.parametrize("weights", [[0.2, 0.3, 0.5], random_weights(50, seed=4), [0.0, 0.25, 0.0, 0.75]])
def test_alias_mixture_reproduces_weights(weights):
    table = alias_build(weights)
    assert all(0.0 <= p <= 1.0 for p in table.prob)
    implied = alias_mixture(table)
    assert max(abs(a - b) for a, b in zip(implied, weights)) < 1e-12


def test_alias_draw_uses_two_uniforms():
    rng = CountingRng.seeded(2)
    sample_alias([0.2, 0.3, 0.5], 1000, rng)
    assert rng.draws == 2000


def test_alias_fair_coin_frequencies():
    table = alias_build([0.5, 0.5])
    rng = CountingRng.seeded(3)
    draws = 10**5
    ones = sum(alias_draw(table, rng) for _ in range(draws))
    assert abs(ones / draws - 0.5) < 4 * 0.5 / math.sqrt(draws)
