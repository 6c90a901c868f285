from typing import List

from ...config.my_settings import settings
from ..rng_core.model import CountingRng
from .model import HybridConfig, SampleRequest, SampleResult, SamplerInfo, SamplerName
from .service import run_sampler

STREAMING = {SamplerName.BETA, SamplerName.BINOM, SamplerName.HYBRID}

DESCRIPTIONS = {
    SamplerName.NAIVE: "Cumulative table plus a binary search per sample",
    SamplerName.SORTED: "Sorted uniforms merged against the cumulative weights",
    SamplerName.BETA: "Sorted uniforms generated online from beta spacings",
    SamplerName.BINOM: "One conditional binomial draw per element",
    SamplerName.HYBRID: "Beta steps in sparse regions, binomial steps in dense ones",
    SamplerName.ALIAS: "Walker alias table, two uniforms per sample",
}


def list_samplers_controller() -> List[SamplerInfo]:
    return [
        SamplerInfo(name=name, streaming=name in STREAMING, description=DESCRIPTIONS[name])
        for name in SamplerName
    ]


def sample_controller(request: SampleRequest) -> SampleResult:
    """
    Run a sampler for an HTTP request - HTTP layer only
    """
    seed = request.seed if request.seed is not None else settings.DEFAULT_SEED
    config = None
    if request.theta is not None or request.beta_run_limit is not None:
        defaults = HybridConfig.from_settings()
        config = HybridConfig(
            theta=request.theta if request.theta is not None else defaults.theta,
            beta_run_limit=request.beta_run_limit if request.beta_run_limit is not None else defaults.beta_run_limit,
        )
    return run_sampler(
        request.algorithm,
        request.weights,
        request.s,
        CountingRng.seeded(seed),
        output=request.output,
        total=request.total,
        config=config,
    )
