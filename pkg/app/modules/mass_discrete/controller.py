from ...config.my_settings import settings
from ..rng_core.model import CountingRng
from ..samplers.model import HybridConfig
from .model import MassSampleSummary, PoissonRequest
from .service import mass_sample_poisson


def poisson_controller(request: PoissonRequest) -> MassSampleSummary:
    """
    Poisson mass sample for an HTTP request - HTTP layer only
    """
    seed = request.seed if request.seed is not None else settings.DEFAULT_SEED
    _, summary = mass_sample_poisson(
        request.lam, request.s, CountingRng.seeded(seed), config=HybridConfig.from_settings()
    )
    return summary
