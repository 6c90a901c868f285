from fastapi import APIRouter, HTTPException

from ...config.my_settings import settings
from ...utils.my_logger import get_logger
from .controller import poisson_controller
from .model import MassSampleSummary, PoissonRequest

logger = get_logger("MASS_DISCRETE_ROUTES")

router = APIRouter(prefix="/mass", tags=["Mass sampling"])


@router.post("/poisson", response_model=MassSampleSummary)
async def poisson(request: PoissonRequest) -> MassSampleSummary:
    """
    Mass-sample a Poisson distribution and return summary statistics.

    Args:
        request: rate, sample size and optional seed

    Returns:
        MassSampleSummary: mean, variance, support points consumed and wall time
    """
    if request.s > settings.MAX_HTTP_SAMPLE:
        raise HTTPException(
            status_code=413, detail=f"Sample size {request.s} exceeds the limit of {settings.MAX_HTTP_SAMPLE}"
        )
    logger.info(f"🎲 Poisson request: lam={request.lam}, s={request.s}")
    return poisson_controller(request)
