from typing import List

from fastapi import APIRouter, HTTPException

from ...config.my_settings import settings
from ...utils.my_logger import get_logger
from .controller import list_samplers_controller, sample_controller
from .model import SampleRequest, SampleResult, SamplerInfo

logger = get_logger("SAMPLERS_ROUTES")

router = APIRouter(prefix="/samplers", tags=["Samplers"])


@router.get("", response_model=List[SamplerInfo])
async def list_samplers() -> List[SamplerInfo]:
    """List the registered sampling algorithms"""
    return list_samplers_controller()


@router.post("/sample", response_model=SampleResult)
async def sample(request: SampleRequest) -> SampleResult:
    """
    Draw a weighted sample with replacement.

    Args:
        request: algorithm, weights, sample size and output mode

    Returns:
        SampleResult: the materialized sample plus draw and step counters
    """
    if request.s > settings.MAX_HTTP_SAMPLE:
        raise HTTPException(
            status_code=413, detail=f"Sample size {request.s} exceeds the limit of {settings.MAX_HTTP_SAMPLE}"
        )
    logger.info(f"🎲 Sample request: algorithm={request.algorithm.value}, n={len(request.weights)}, s={request.s}")
    return sample_controller(request)
