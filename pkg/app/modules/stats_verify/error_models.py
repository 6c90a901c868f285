"""
Error models for the stats_verify module
"""
from dataclasses import dataclass
from typing import Optional

from ...utils.error_detail import ErrorDetail


class VerifyErrorCodes:
    """Error codes for stats_verify module"""
    OUTCOME_SPACE_TOO_LARGE = "VERIFY_001"
    LENGTH_MISMATCH = "VERIFY_002"


@dataclass
class OutcomeSpaceTooLargeError(Exception):
    """Raised when exact mode would enumerate too many count vectors"""
    message: str = "Outcome space too large for the exact test; use marginal mode"
    outcomes: Optional[int] = None
    limit: Optional[int] = None

    def __post_init__(self):
        self.error_detail = ErrorDetail(
            message=self.message,
            code=VerifyErrorCodes.OUTCOME_SPACE_TOO_LARGE,
            details={"outcomes": self.outcomes, "limit": self.limit, "hint": "mode=marginal"}
        )
        super().__init__(self.error_detail.message)


@dataclass
class LengthMismatchError(Exception):
    """Raised when paired vectors differ in length"""
    message: str = "Vector lengths differ"
    left: Optional[int] = None
    right: Optional[int] = None

    def __post_init__(self):
        self.error_detail = ErrorDetail(
            message=self.message,
            code=VerifyErrorCodes.LENGTH_MISMATCH,
            details={"left": self.left, "right": self.right}
        )
        super().__init__(self.error_detail.message)
