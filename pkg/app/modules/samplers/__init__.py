"""
Weighted sampling with replacement: streaming samplers and finite baselines
"""
from .model import (
    SamplerName,
    HybridConfig,
    HybridCursor,
    WalkStats,
    AliasTable,
    SampleResult,
    SampleRequest,
    SamplerInfo,
)
from .service import (
    conditional_probability,
    sample_naive,
    sample_sorted_uniforms,
    sample_online_beta,
    sample_conditional_binomial,
    sample_hybrid,
    alias_build,
    alias_mixture,
    alias_draw,
    sample_alias,
    SAMPLERS,
    resolve_sampler,
    run_sampler,
)
from .error_models import InvalidSampleSizeError, UnknownSamplerError, InvalidConfigError
