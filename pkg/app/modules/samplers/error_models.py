"""
Error models for the samplers module
"""
from dataclasses import dataclass
from typing import Optional, Any, List

from ...utils.error_detail import ErrorDetail


class SamplerErrorCodes:
    """Error codes for samplers module"""
    INVALID_SAMPLE_SIZE = "SAMP_001"
    UNKNOWN_SAMPLER = "SAMP_002"
    INVALID_CONFIG = "SAMP_003"


@dataclass
class InvalidSampleSizeError(Exception):
    """Raised when the requested sample size is negative or not an integer"""
    message: str = "Sample size must be a nonnegative integer"
    s: Optional[Any] = None

    def __post_init__(self):
        self.error_detail = ErrorDetail(
            message=self.message,
            code=SamplerErrorCodes.INVALID_SAMPLE_SIZE,
            details={"s": repr(self.s)}
        )
        super().__init__(self.error_detail.message)


@dataclass
class UnknownSamplerError(Exception):
    """Raised when a sampler name is not registered"""
    message: str = "Unknown sampler"
    name: Optional[str] = None
    available: Optional[List[str]] = None

    def __post_init__(self):
        self.error_detail = ErrorDetail(
            message=self.message,
            code=SamplerErrorCodes.UNKNOWN_SAMPLER,
            details={"name": self.name, "available": self.available}
        )
        super().__init__(self.error_detail.message)


@dataclass
class InvalidConfigError(Exception):
    """Raised when a hybrid configuration is out of range"""
    message: str = "Invalid hybrid configuration"
    field: Optional[str] = None
    value: Optional[Any] = None

    def __post_init__(self):
        self.error_detail = ErrorDetail(
            message=self.message,
            code=SamplerErrorCodes.INVALID_CONFIG,
            details={"field": self.field, "value": repr(self.value)} if self.field else None
        )
        super().__init__(self.error_detail.message)
