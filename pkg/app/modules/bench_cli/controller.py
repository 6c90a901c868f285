from .model import PopulationRequest, PopulationResponse, PopulationSpec
from .service import gen_population


def population_controller(request: PopulationRequest) -> PopulationResponse:
    """
    Generate a benchmark population - HTTP layer only
    """
    weights = gen_population(PopulationSpec(kind=request.kind, n=request.n, seed=request.seed))
    return PopulationResponse(kind=request.kind, n=request.n, seed=request.seed, weights=weights)
