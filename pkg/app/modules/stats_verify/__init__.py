"""
Statistical oracles and the goodness-of-fit suite
"""
from .model import GofMode, GofReport, VerifyCase, CaseReport
from .service import (
    multinomial_exact_pmf,
    enumerate_count_vectors,
    count_vector_space,
    chi_square_stat,
    chi_square_pvalue,
    pool_bins,
    gof_multinomial,
    gof_poisson,
    seeds_rule,
    replicate_counts,
    sample_flipped_interval,
    resolve_runner,
    default_cases,
    run_verify_suite,
    NEGATIVE_CONTROL,
)
from .error_models import OutcomeSpaceTooLargeError, LengthMismatchError
