"""
Special-purpose variate generators shared by every sampler.

All randomness flows through ``CountingRng.next_uniform`` so draw counts are
exact. Binomial variates are drawn by inversion with exactly one uniform each:
a sequential search from 0 for small means, and a search started from a
quantile guess otherwise. Both run in constant expected time.
"""
import math

from scipy.special import bdtr, bdtrc, ndtri

from ...config.my_settings import settings
from ...utils.my_logger import get_logger
from .error_models import DomainError
from .model import CountingRng, KahanAccumulator

logger = get_logger("RNG_CORE_SERVICE")

# Keeps the normal quantile of the guess finite
_TINY_UNIFORM = 1e-300
_TOP_UNIFORM = 1.0 - 2.0 ** -53


def next_uniform(rng: CountingRng) -> float:
    """Next uniform in [0, 1); increments ``rng.draws`` by one"""
    return rng.next_uniform()


def beta_tail_step(u: float, shape: int) -> float:
    """
    Inverse CDF of Beta(1, shape) at u: 1 - (1 - u)^(1/shape).

    This is the distribution of the minimum of ``shape`` iid uniforms. The
    power is taken through log1p/expm1 so large shapes keep their precision.
    """
    if shape < 1 or int(shape) != shape:
        raise DomainError("Beta tail shape must be a positive integer", parameter="shape", value=shape)
    if not 0.0 <= u < 1.0:
        raise DomainError("Uniform argument must lie in [0, 1)", parameter="u", value=u)
    return -math.expm1(math.log1p(-u) / shape)


def beta_draw(shape: int, rng: CountingRng) -> float:
    return beta_tail_step(rng.next_uniform(), shape)


def kahan_add(acc: KahanAccumulator, x: float) -> KahanAccumulator:
    return acc.add(x)


def clamp_probability(p: float, tolerance: float = settings.CLAMP_TOLERANCE) -> float:
    """
    Clamp p into [0, 1] when it is off by accumulated rounding only.

    Anything further out than ``tolerance`` is an upstream bug and raises.
    """
    if not (-tolerance <= p <= 1.0 + tolerance):
        raise DomainError(
            f"Probability {p!r} is outside [0, 1] beyond the clamp tolerance {tolerance}",
            parameter="p",
            value=p,
        )
    if p < 0.0:
        logger.debug(f"Clamped probability {p!r} up to 0")
        return 0.0
    if p > 1.0:
        logger.debug(f"Clamped probability {p!r} down to 1")
        return 1.0
    return p


def binomial_draw(
    trials: int,
    p: float,
    rng: CountingRng,
    tolerance: float = settings.CLAMP_TOLERANCE,
    inversion_cutoff: float = settings.BINOMIAL_INVERSION_CUTOFF,
) -> int:
    """Binomial(trials, p) variate in constant expected time"""
    if trials < 0:
        raise DomainError("Binomial trials must be nonnegative", parameter="trials", value=trials)
    p = clamp_probability(p, tolerance)
    if trials == 0 or p == 0.0:
        return 0
    if p == 1.0:
        return trials

    flipped = p > 0.5
    pp = 1.0 - p if flipped else p
    if trials * pp <= inversion_cutoff:
        k = _binomial_inversion(trials, pp, rng)
    else:
        k = _binomial_guided_inversion(trials, pp, rng)
    return trials - k if flipped else k


def _binomial_inversion(n: int, p: float, rng: CountingRng) -> int:
    # Sequential search from 0; restarts past a far-tail bound guard against
    # the pmf recurrence losing the last uniform to rounding.
    q = 1.0 - p
    ratio = p / q
    a = (n + 1) * ratio
    r0 = math.exp(n * math.log1p(-p))
    bound = min(n, n * p + 10.0 * math.sqrt(n * p * q + 1.0))
    while True:
        u = rng.next_uniform()
        r = r0
        x = 0
        while u > r:
            u -= r
            x += 1
            if x > bound:
                break
            r *= a / x - ratio
        else:
            return x


def _quantile_guess(n: int, p: float, u: float) -> int:
    # Normal quantile with a skewness correction; off by O(1) steps on average
    q = 1.0 - p
    z = float(ndtri(min(max(u, _TINY_UNIFORM), _TOP_UNIFORM)))
    guess = n * p + math.sqrt(n * p * q) * z + (q - p) * (z * z - 1.0) / 6.0 - 0.5
    return int(min(max(round(guess), 0), n))


def _binomial_cdf_and_pmf(k: int, n: int, p: float) -> tuple[float, float]:
    # pmf as a difference of whichever tail is smaller, so it keeps its relative precision
    cdf = float(bdtr(k, n, p))
    if k == 0:
        return cdf, cdf
    if cdf <= 0.5:
        return cdf, cdf - float(bdtr(k - 1, n, p))
    return cdf, float(bdtrc(k - 1, n, p)) - float(bdtrc(k, n, p))


def _binomial_guided_inversion(n: int, p: float, rng: CountingRng) -> int:
    """
    Inversion for large means: exactly one uniform per variate.

    The search starts at a quantile guess, takes the exact CDF and pmf there
    and walks the pmf recurrence to the smallest k with F(k) > u. The guess
    is within a bounded expected distance of the answer, so the walk is
    constant expected work.
    """
    u = rng.next_uniform()
    if u <= 0.0:
        return 0
    q = 1.0 - p
    k = _quantile_guess(n, p, u)
    cdf, pmf = _binomial_cdf_and_pmf(k, n, p)
    if u < cdf:
        while k > 0:
            below = cdf - pmf
            if u >= below:
                return k
            pmf *= k * q / ((n - k + 1) * p)
            cdf = below
            k -= 1
        return 0
    while k < n:
        k += 1
        pmf *= (n - k + 1) * p / (k * q)
        cdf += pmf
        if u < cdf:
            return k
    return n
