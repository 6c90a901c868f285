"""
Error models for the rng_core module
"""
from dataclasses import dataclass
from typing import Optional, Any

from ...utils.error_detail import ErrorDetail


class RngErrorCodes:
    """Error codes for rng_core module"""
    DOMAIN_ERROR = "RNG_001"
    SCRIPT_EXHAUSTED = "RNG_002"


@dataclass
class DomainError(Exception):
    """Raised when a variate generator receives a parameter outside its domain"""
    message: str = "Parameter outside the generator domain"
    parameter: Optional[str] = None
    value: Optional[Any] = None

    def __post_init__(self):
        self.error_detail = ErrorDetail(
            message=self.message,
            code=RngErrorCodes.DOMAIN_ERROR,
            details={"parameter": self.parameter, "value": repr(self.value)} if self.parameter else None
        )
        super().__init__(self.error_detail.message)


@dataclass
class ScriptExhaustedError(Exception):
    """Raised when a scripted uniform source runs out of values"""
    message: str = "Scripted uniform source exhausted"
    draws: int = 0

    def __post_init__(self):
        self.error_detail = ErrorDetail(
            message=self.message,
            code=RngErrorCodes.SCRIPT_EXHAUSTED,
            details={"draws": self.draws}
        )
        super().__init__(self.error_detail.message)
