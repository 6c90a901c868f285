"""
Error models for the mass_discrete module
"""
from dataclasses import dataclass
from typing import Optional, Any

from ...utils.error_detail import ErrorDetail


class MassErrorCodes:
    """Error codes for mass_discrete module"""
    ENUMERATOR_ERROR = "MASS_001"


@dataclass
class EnumeratorError(Exception):
    """Raised when an enumerator yields a mass that is not a positive finite number"""
    message: str = "Enumerator produced an invalid mass"
    value: Optional[Any] = None
    mass: Optional[float] = None

    def __post_init__(self):
        self.error_detail = ErrorDetail(
            message=self.message,
            code=MassErrorCodes.ENUMERATOR_ERROR,
            details={"value": repr(self.value), "mass": repr(self.mass)}
        )
        super().__init__(self.error_detail.message)
