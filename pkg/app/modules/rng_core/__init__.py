"""
Uniform randomness contract and the special-purpose variate generators
"""
from .model import CountingRng, KahanAccumulator, RngMode
from .service import (
    next_uniform,
    beta_tail_step,
    beta_draw,
    binomial_draw,
    clamp_probability,
    kahan_add,
)
from .error_models import DomainError, ScriptExhaustedError

__all__ = [
    "CountingRng",
    "KahanAccumulator",
    "RngMode",
    "next_uniform",
    "beta_tail_step",
    "beta_draw",
    "binomial_draw",
    "clamp_probability",
    "kahan_add",
    "DomainError",
    "ScriptExhaustedError",
]
