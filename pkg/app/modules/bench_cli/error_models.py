"""
Error models for the bench_cli module
"""
from dataclasses import dataclass
from typing import Optional, Any

from ...utils.error_detail import ErrorDetail


class BenchErrorCodes:
    """Error codes for bench_cli module"""
    USAGE_ERROR = "CLI_001"
    OUTPUT_ERROR = "CLI_002"
    POPULATION_ERROR = "CLI_003"


@dataclass
class UsageError(Exception):
    """Raised for malformed or inconsistent command-line flags"""
    message: str = "Invalid command-line usage"
    flag: Optional[str] = None

    def __post_init__(self):
        self.error_detail = ErrorDetail(
            message=self.message,
            code=BenchErrorCodes.USAGE_ERROR,
            details={"flag": self.flag} if self.flag else None
        )
        super().__init__(self.error_detail.message)


@dataclass
class OutputError(Exception):
    """Raised when a result file cannot be written"""
    message: str = "Cannot write output"
    path: Optional[str] = None

    def __post_init__(self):
        self.error_detail = ErrorDetail(
            message=self.message,
            code=BenchErrorCodes.OUTPUT_ERROR,
            details={"path": self.path}
        )
        super().__init__(self.error_detail.message)


@dataclass
class PopulationError(Exception):
    """Raised when a population cannot be generated from its description"""
    message: str = "Invalid population"
    field: Optional[str] = None
    value: Optional[Any] = None

    def __post_init__(self):
        self.error_detail = ErrorDetail(
            message=self.message,
            code=BenchErrorCodes.POPULATION_ERROR,
            details={"field": self.field, "value": repr(self.value)}
        )
        super().__init__(self.error_detail.message)
