"""
Global error handlers for the FastAPI application
"""
from fastapi import Request
from fastapi.responses import JSONResponse

from ..modules.rng_core.error_models import DomainError, ScriptExhaustedError
from ..modules.stream_api.error_models import (
    NegativeWeightError,
    NormalizationError,
    StreamUnderflowError,
    SinkBoundsError,
    SinkOrderError,
    WeightFileError,
)
from ..modules.samplers.error_models import (
    InvalidSampleSizeError,
    UnknownSamplerError,
    InvalidConfigError,
)
from ..modules.mass_discrete.error_models import EnumeratorError
from ..modules.stats_verify.error_models import OutcomeSpaceTooLargeError, LengthMismatchError
from ..modules.bench_cli.error_models import UsageError, OutputError, PopulationError
from ..utils.my_logger import get_logger

logger = get_logger("ERROR_HANDLERS")

STATUS_BY_ERROR = {
    # Bad input
    DomainError: 400,
    NegativeWeightError: 400,
    NormalizationError: 400,
    InvalidSampleSizeError: 400,
    InvalidConfigError: 400,
    LengthMismatchError: 400,
    OutcomeSpaceTooLargeError: 400,
    PopulationError: 400,
    UsageError: 400,
    UnknownSamplerError: 404,
    # Weights could not cover the sample
    StreamUnderflowError: 422,
    EnumeratorError: 422,
    # Internal contract violations
    ScriptExhaustedError: 500,
    SinkBoundsError: 500,
    SinkOrderError: 500,
    WeightFileError: 500,
    OutputError: 500,
}


def register_error_handlers(app):
    """Register all global error handlers with the FastAPI app"""

    def make_handler(status_code: int):
        async def handler(request: Request, exc: Exception):
            log = logger.error if status_code >= 500 else logger.warning
            log(f"❌ {request.method} {request.url.path}: {exc.error_detail.code} {exc.error_detail.message}")
            return JSONResponse(
                status_code=status_code,
                content=exc.error_detail.to_dict()
            )
        return handler

    for error, status_code in STATUS_BY_ERROR.items():
        app.add_exception_handler(error, make_handler(status_code))
