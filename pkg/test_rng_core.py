"""
Tests for the counting uniform source, the beta tail step, the binomial
generator and the compensated accumulator.
"""
import math

import numpy as np
import pytest
from scipy import stats

from app.modules.rng_core import (
    CountingRng,
    DomainError,
    KahanAccumulator,
    RngMode,
    ScriptExhaustedError,
    beta_draw,
    beta_tail_step,
    binomial_draw,
    clamp_probability,
    kahan_add,
    next_uniform,
)

SEEDS = [1, 2, 3, 4, 5]


def binomial_gof_pvalue(draws, n, p):
    """Chi-square p-value of binomial draws against scipy's exact pmf"""
    draws = np.asarray(draws)
    total = len(draws)
    sd = math.sqrt(n * p * (1 - p))
    top = int(min(n, n * p + 12 * sd + 12))
    ks = np.arange(top + 1)
    expected = stats.binom.pmf(ks, n, p) * total
    expected[-1] += stats.binom.sf(top, n, p) * total
    observed = np.bincount(np.minimum(draws, top), minlength=top + 1)

    big = expected >= 5
    f_obs = observed[big].astype(float)
    f_exp = expected[big].copy()
    rest_obs, rest_exp = observed[~big].sum(), expected[~big].sum()
    if rest_exp >= 5:
        f_obs = np.append(f_obs, rest_obs)
        f_exp = np.append(f_exp, rest_exp)
    else:
        f_obs[0] += rest_obs
        f_exp[0] += rest_exp
    f_exp *= f_obs.sum() / f_exp.sum()
    if len(f_exp) < 2:
        return 1.0
    return stats.chisquare(f_obs, f_exp).pvalue


# ---------------------------------------------------------------------------
# CountingRng
# ---------------------------------------------------------------------------

def test_scripted_passthrough():
    rng = CountingRng.scripted([0.25, 0.75])
    assert rng.mode == RngMode.SCRIPTED
    assert next_uniform(rng) == 0.25
    assert next_uniform(rng) == 0.75
    assert rng.draws == 2


def test_scripted_exhaustion_is_loud():
    rng = CountingRng.scripted([0.5])
    rng.next_uniform()
    with pytest.raises(ScriptExhaustedError) as exc:
        rng.next_uniform()
    assert exc.value.error_detail.code == "RNG_002"


def test_scripted_values_must_be_unit_interval():
    with pytest.raises(DomainError):
        CountingRng.scripted([0.2, 1.0])


def test_same_seed_same_sequence():
    a = CountingRng.seeded(42)
    b = CountingRng.seeded(42)
    assert [a.next_uniform(), a.next_uniform()] == [b.next_uniform(), b.next_uniform()]


def test_block_size_never_changes_the_sequence():
    small = CountingRng.seeded(7, block_size=1)
    large = CountingRng.seeded(7, block_size=4096)
    assert [small.next_uniform() for _ in range(100)] == [large.next_uniform() for _ in range(100)]


def test_counter_counts_every_draw():
    rng = CountingRng.seeded(3)
    for _ in range(1000):
        u = rng.next_uniform()
        assert 0.0 <= u < 1.0
    assert rng.draws == 1000


def test_uniforms_matches_single_draws():
    batched = CountingRng.seeded(11, block_size=64)
    single = CountingRng.seeded(11, block_size=64)
    head = [batched.next_uniform() for _ in range(3)]
    bulk = batched.uniforms(2000).tolist()
    tail = batched.next_uniform()
    expected = [single.next_uniform() for _ in range(2004)]
    assert head + bulk + [tail] == expected
    assert batched.draws == single.draws == 2004


def test_spawned_children_are_independent_and_fresh():
    children = CountingRng.seeded(5).spawn(3)
    firsts = [child.next_uniform() for child in children]
    assert len(set(firsts)) == 3
    assert all(child.draws == 1 for child in children)


def test_scripted_source_cannot_spawn():
    with pytest.raises(DomainError):
        CountingRng.scripted([0.1]).spawn(2)


# ---------------------------------------------------------------------------
# Beta tail step
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "u, shape, expected",
    [
        (0.0, 7, 0.0),
        (0.5, 1, 0.5),
        (0.9375, 4, 0.5),
    ],
)
def test_beta_tail_step_examples(u, shape, expected):
    assert beta_tail_step(u, shape) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("shape", [0, -1, 2.5])
def test_beta_tail_step_rejects_bad_shape(shape):
    with pytest.raises(DomainError):
        beta_tail_step(0.3, shape)


def test_beta_tail_step_monotone():
    us = np.linspace(0.0, 0.999, 50)
    for shape in (1, 2, 10, 1000):
        values = [beta_tail_step(float(u), shape) for u in us]
        assert all(0.0 <= v <= 1.0 for v in values)
        assert values == sorted(values)
    for u in (0.1, 0.5, 0.9):
        by_shape = [beta_tail_step(u, shape) for shape in (1, 2, 10, 1000)]
        assert by_shape == sorted(by_shape, reverse=True)


@pytest.mark.parametrize("shape", [1, 2, 10, 1000])
def test_beta_draw_matches_min_of_uniforms_cdf(shape):
    p_values = []
    for seed in SEEDS:
        rng = CountingRng.seeded(seed)
        values = [beta_draw(shape, rng) for _ in range(20_000)]
        assert rng.draws == 20_000
        p_values.append(stats.kstest(values, lambda x: 1.0 - (1.0 - np.clip(x, 0, 1)) ** shape).pvalue)
    assert sum(p > 0.001 for p in p_values) >= 4


# ---------------------------------------------------------------------------
# Binomial
# ---------------------------------------------------------------------------

def test_binomial_degenerate_cases():
    rng = CountingRng.scripted([])
    assert binomial_draw(10, 0.0, rng) == 0
    assert binomial_draw(0, 0.4, rng) == 0
    assert binomial_draw(10, 1.0, rng) == 10
    assert binomial_draw(10, 1.0 + 1e-12, rng) == 10
    assert binomial_draw(10, -1e-12, rng) == 0
    assert rng.draws == 0


@pytest.mark.parametrize("p", [1.5, -0.1, 1.0 + 1e-6])
def test_binomial_rejects_probability_beyond_clamp(p):
    with pytest.raises(DomainError):
        binomial_draw(10, p, CountingRng.seeded(1))


def test_clamp_probability_band():
    assert clamp_probability(1.0 + 1e-12) == 1.0
    assert clamp_probability(-1e-12) == 0.0
    assert clamp_probability(0.25) == 0.25
    with pytest.raises(DomainError):
        clamp_probability(1.0 + 1e-8)


def test_binomial_mean():
    rng = CountingRng.seeded(42)
    draws = [binomial_draw(100, 0.3, rng) for _ in range(100_000)]
    assert abs(np.mean(draws) - 30.0) < 4 * math.sqrt(100 * 0.3 * 0.7) / math.sqrt(100_000)


@pytest.mark.parametrize("n, p", [(5, 0.5), (100, 0.03), (1_000_000, 1e-5), (30, 0.999), (1000, 0.4), (500, 0.93)])
def test_binomial_goodness_of_fit(n, p):
    p_values = []
    for seed in SEEDS:
        rng = CountingRng.seeded(seed)
        draws = [binomial_draw(n, p, rng) for _ in range(20_000)]
        assert all(0 <= k <= n for k in draws)
        p_values.append(binomial_gof_pvalue(draws, n, p))
    assert sum(pv > 0.001 for pv in p_values) >= 4


@pytest.mark.parametrize("n, p", [(10, 0.5), (1000, 0.3), (10**6, 0.01), (10**9, 1e-8), (10**9, 0.3), (10**9, 0.5)])
def test_binomial_constant_expected_draws(n, p):
    rng = CountingRng.seeded(9)
    calls = 10_000
    for _ in range(calls):
        binomial_draw(n, p, rng)
    assert rng.draws / calls <= 32


@pytest.mark.parametrize("n, p", [(1000, 0.3), (10**6, 0.01), (10**9, 0.5)])
def test_binomial_large_mean_uses_one_uniform(n, p):
    rng = CountingRng.seeded(4)
    calls = 2000
    for _ in range(calls):
        binomial_draw(n, p, rng)
    assert rng.draws == calls


@pytest.mark.parametrize("u", [0.0, 1e-9, 0.02, 0.37, 0.5, 0.81, 0.999999])
def test_binomial_large_mean_is_exact_inversion(u):
    n, p = 1000, 0.3
    expected = 0 if u == 0.0 else int(stats.binom.ppf(u, n, p))
    assert binomial_draw(n, p, CountingRng.scripted([u])) == expected


# ---------------------------------------------------------------------------
# Kahan accumulator
# ---------------------------------------------------------------------------

def test_kahan_empty_and_exact():
    acc = KahanAccumulator()
    assert acc.sum == 0.0
    for x in (1.0, 2.0, 3.0):
        kahan_add(acc, x)
    assert acc.total == 6.0
    acc.reset()
    assert acc.sum == 0.0 and acc.compensation == 0.0


def test_kahan_keeps_tiny_increments():
    acc = KahanAccumulator()
    acc.add(1.0)
    for _ in range(10_000):
        acc.add(1e-16)
    exact = 1.0 + 1e-12
    assert abs(acc.sum - exact) / exact < 1e-15
    naive = 1.0
    for _ in range(10_000):
        naive += 1e-16
    assert naive == 1.0
