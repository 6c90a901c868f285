"""
Error models for the stream_api module
"""
from dataclasses import dataclass
from typing import Optional

from ...utils.error_detail import ErrorDetail


class StreamErrorCodes:
    """Error codes for stream_api module"""
    NEGATIVE_WEIGHT = "STREAM_001"
    NORMALIZATION_FAILED = "STREAM_002"
    STREAM_UNDERFLOW = "STREAM_003"
    SINK_BOUNDS = "STREAM_004"
    SINK_ORDER = "STREAM_005"
    WEIGHT_FILE = "STREAM_006"


@dataclass
class NegativeWeightError(Exception):
    """Raised when a population weight is negative or not a finite number"""
    message: str = "Weights must be finite and nonnegative"
    index: Optional[int] = None
    weight: Optional[float] = None

    def __post_init__(self):
        self.error_detail = ErrorDetail(
            message=self.message,
            code=StreamErrorCodes.NEGATIVE_WEIGHT,
            details={"index": self.index, "weight": self.weight} if self.index is not None else None
        )
        super().__init__(self.error_detail.message)


@dataclass
class NormalizationError(Exception):
    """Raised when weights do not sum to one within tolerance or a declared total is invalid"""
    message: str = "Weights are not normalized"
    total: Optional[float] = None
    tolerance: Optional[float] = None

    def __post_init__(self):
        self.error_detail = ErrorDetail(
            message=self.message,
            code=StreamErrorCodes.NORMALIZATION_FAILED,
            details={"total": self.total, "tolerance": self.tolerance}
        )
        super().__init__(self.error_detail.message)


@dataclass
class StreamUnderflowError(Exception):
    """Raised when a finite stream ends with samples left and too much mass missing"""
    message: str = "Weight stream exhausted before the sample was complete"
    remaining: int = 0
    consumed_mass: Optional[float] = None
    elements: int = 0

    def __post_init__(self):
        self.error_detail = ErrorDetail(
            message=self.message,
            code=StreamErrorCodes.STREAM_UNDERFLOW,
            details={
                "remaining": self.remaining,
                "consumed_mass": self.consumed_mass,
                "elements": self.elements,
            }
        )
        super().__init__(self.error_detail.message)


@dataclass
class SinkBoundsError(Exception):
    """Raised when a dense collector receives an index outside its population"""
    message: str = "Index outside the dense collector range"
    index: Optional[int] = None
    size: Optional[int] = None

    def __post_init__(self):
        self.error_detail = ErrorDetail(
            message=self.message,
            code=StreamErrorCodes.SINK_BOUNDS,
            details={"index": self.index, "size": self.size}
        )
        super().__init__(self.error_detail.message)


@dataclass
class SinkOrderError(Exception):
    """Raised when emissions arrive out of index order or with a nonpositive multiplicity"""
    message: str = "Sink emissions must have nondecreasing indices and positive multiplicities"
    index: Optional[int] = None
    previous_index: Optional[int] = None
    multiplicity: Optional[int] = None

    def __post_init__(self):
        self.error_detail = ErrorDetail(
            message=self.message,
            code=StreamErrorCodes.SINK_ORDER,
            details={
                "index": self.index,
                "previous_index": self.previous_index,
                "multiplicity": self.multiplicity,
            }
        )
        super().__init__(self.error_detail.message)


@dataclass
class WeightFileError(Exception):
    """Raised when a weight file cannot be read, parsed or written"""
    message: str = "Weight file error"
    path: Optional[str] = None
    line: Optional[int] = None

    def __post_init__(self):
        self.error_detail = ErrorDetail(
            message=self.message,
            code=StreamErrorCodes.WEIGHT_FILE,
            details={"path": self.path, "line": self.line} if self.path else None
        )
        super().__init__(self.error_detail.message)
