"""
Mass sampling of iid variates from discrete distributions
"""
from .model import PmfEnumerator, MassSample, MassSampleSummary, PoissonRequest
from .service import (
    poisson_pmf,
    poisson_mode,
    binomial_pmf,
    binomial_mode,
    UnimodalWalker,
    DijkstraWalker,
    unimodal_walker,
    dijkstra_walker,
    integer_neighbors,
    mass_sample,
    mass_sample_shuffled,
    mass_sample_poisson,
    fisher_yates_shuffle,
    summarize,
)
from .error_models import EnumeratorError
