from fastapi import APIRouter

from ...utils.my_logger import get_logger
from .controller import population_controller
from .model import PopulationRequest, PopulationResponse

logger = get_logger("POPULATION_ROUTES")

router = APIRouter(prefix="/populations", tags=["Populations"])


@router.post("", response_model=PopulationResponse)
async def generate_population(request: PopulationRequest) -> PopulationResponse:
    """
    Generate a normalized, shuffled benchmark population.

    Args:
        request: population family, size and seed

    Returns:
        PopulationResponse: the weights in shuffled order
    """
    logger.info(f"📊 Population request: kind={request.kind.value}, n={request.n}, seed={request.seed}")
    return population_controller(request)
