"""
Streaming contracts: weight producers, sample consumers and the materialized
count types they produce.
"""
from __future__ import annotations

import math
from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from ...config.my_settings import settings
from .error_models import (
    NegativeWeightError,
    NormalizationError,
    SinkBoundsError,
    SinkOrderError,
)

Event = Tuple[Any, ...]


class OutputMode(str, Enum):
    """Materialized forms of a sample"""
    ARRAY = "array"
    DENSE = "dense"
    SPARSE = "sparse"


class CountsRepresentation(str, Enum):
    DENSE = "dense"
    SPARSE = "sparse"


class SampleCounts(BaseModel):
    """Multiplicity map from population index to count"""
    representation: CountsRepresentation = Field(..., description="Dense vector or sparse map")
    dense: Optional[List[int]] = Field(None, description="Counts by index (dense form)")
    sparse: Optional[Dict[int, int]] = Field(None, description="Nonzero counts by index (sparse form)")
    total: int = Field(..., ge=0, description="Sum of all counts")

    @model_validator(mode="after")
    def _check_counts(self) -> "SampleCounts":
        if self.representation == CountsRepresentation.DENSE:
            if self.dense is None or any(c < 0 for c in self.dense):
                raise ValueError("dense counts must be present and nonnegative")
            observed = sum(self.dense)
        else:
            if self.sparse is None or any(c < 1 for c in self.sparse.values()):
                raise ValueError("sparse counts must be present and at least 1")
            observed = sum(self.sparse.values())
        if observed != self.total:
            raise ValueError(f"counts sum to {observed}, expected total {self.total}")
        return self

    def to_dense(self, n: Optional[int] = None) -> List[int]:
        if self.representation == CountsRepresentation.DENSE:
            counts = list(self.dense)
            if n is not None and n > len(counts):
                counts.extend([0] * (n - len(counts)))
            return counts
        size = n if n is not None else (max(self.sparse) + 1 if self.sparse else 0)
        counts = [0] * size
        for index, count in self.sparse.items():
            counts[index] = count
        return counts

    def to_sparse(self) -> Dict[int, int]:
        if self.representation == CountsRepresentation.SPARSE:
            return dict(self.sparse)
        return {index: count for index, count in enumerate(self.dense) if count}

    @classmethod
    def histogram(cls, array: List[int], n: int) -> "SampleCounts":
        counts = [0] * n
        for index in array:
            counts[index] += 1
        return cls(representation=CountsRepresentation.DENSE, dense=counts, total=len(array))


# ---------------------------------------------------------------------------
# Weight streams
# ---------------------------------------------------------------------------

class WeightStream(ABC):
    """
    Pull-based producer of nonnegative weights, one per population element.

    Each weight is produced once, in index order. After the first ``None`` the
    stream stays exhausted.
    """

    declared_total: Optional[float] = None

    def __init__(self):
        self.pulled = 0
        self._exhausted = False

    def next(self) -> Optional[float]:
        if self._exhausted:
            return None
        weight = self._produce(self.pulled)
        if weight is None:
            self._exhausted = True
            return None
        if not (weight >= 0.0) or math.isinf(weight):
            raise NegativeWeightError(
                f"Weight at index {self.pulled} is not a finite nonnegative number",
                index=self.pulled,
                weight=weight,
            )
        self.pulled += 1
        return weight

    @property
    def last_index(self) -> int:
        return self.pulled - 1

    @property
    def exhausted(self) -> bool:
        return self._exhausted

    @abstractmethod
    def _produce(self, index: int) -> Optional[float]:
        """Effective probability of element ``index``, or None past the end"""


class ListWeightStream(WeightStream):
    """In-order stream over a finite list, normalized by an optional declared total"""

    def __init__(
        self,
        weights: List[float],
        total: Optional[float] = None,
        tolerance: float = settings.CLAMP_TOLERANCE,
    ):
        super().__init__()
        for index, w in enumerate(weights):
            if not (w >= 0.0) or math.isinf(w):
                raise NegativeWeightError(
                    f"Weight at index {index} is not a finite nonnegative number", index=index, weight=w
                )
        if total is not None:
            if not (total > 0.0) or math.isinf(total):
                raise NormalizationError("Declared total must be positive and finite", total=total)
            self.declared_total = float(total)
        if weights:
            mass = math.fsum(weights) / (self.declared_total or 1.0)
            if abs(mass - 1.0) > tolerance:
                raise NormalizationError(
                    f"Normalized weights sum to {mass!r}; check the weights or the declared total",
                    total=mass,
                    tolerance=tolerance,
                )
        self._weights = weights
        self._scale = 1.0 / self.declared_total if self.declared_total else 1.0

    def __len__(self) -> int:
        return len(self._weights)

    def _produce(self, index: int) -> Optional[float]:
        if index >= len(self._weights):
            return None
        return self._weights[index] * self._scale


class GeneratorWeightStream(WeightStream):
    """Lazy, possibly infinite stream computing weight k as ``fn(k)``"""

    def __init__(self, fn: Callable[[int], Optional[float]]):
        super().__init__()
        self._fn = fn

    def _produce(self, index: int) -> Optional[float]:
        value = self._fn(index)
        return None if value is None else float(value)


class EnumeratorWeightStream(WeightStream):
    """
    Stream over a PMF enumerator's masses.

    Only the most recently pulled support value is kept, which is all a
    single-pass sampler ever needs to map its current index back.
    """

    def __init__(self, enumerator: Any):
        super().__init__()
        self._enumerator = enumerator
        self.current_value: Any = None

    def _produce(self, index: int) -> Optional[float]:
        item = self._enumerator.next()
        if item is None:
            return None
        value, mass = item
        self.current_value = value
        return mass

    def value_of(self, index: int) -> Any:
        if index != self.last_index:
            raise IndexError(f"Support value for index {index} is no longer held (current {self.last_index})")
        return self.current_value


class InstrumentedStream(WeightStream):
    """Wraps a stream, counting pulls and logging ("pull", index) events"""

    def __init__(self, inner: WeightStream, events: Optional[List[Event]] = None):
        super().__init__()
        self._inner = inner
        self.declared_total = None
        self.events = events if events is not None else []
        self.pulls_after_exhaustion = 0

    def next(self) -> Optional[float]:
        if self._exhausted:
            self.pulls_after_exhaustion += 1
        return super().next()

    def _produce(self, index: int) -> Optional[float]:
        weight = self._inner.next()
        if weight is not None:
            self.events.append(("pull", index))
        return weight


# ---------------------------------------------------------------------------
# Sample sinks
# ---------------------------------------------------------------------------

class SampleSink(ABC):
    """
    Consumer of (index, multiplicity) emissions.

    Indices must be nondecreasing and multiplicities positive. Samplers emit
    each index at most once with one exception: samples left over at the end
    of a finite stream go to the last positive element, whose own emission may
    already be out, so that index repeats back to back. Wrap the sink in
    ``CoalescingSink`` to merge the two.
    """

    def __init__(self):
        self.total = 0
        self._last_index = -1

    def accept(self, index: int, multiplicity: int) -> None:
        if multiplicity <= 0 or index < self._last_index:
            raise SinkOrderError(
                index=index, previous_index=self._last_index, multiplicity=multiplicity
            )
        self._last_index = index
        self.total += multiplicity
        self._accept(index, multiplicity)

    @abstractmethod
    def _accept(self, index: int, multiplicity: int) -> None:
        ...

    def close(self) -> None:
        """Called once by the sampler after the last emission"""

    def result(self) -> Any:
        return None


class DenseCollector(SampleSink):
    """Counts in an array of size n (the population-sized variant)"""

    def __init__(self, n: int):
        super().__init__()
        self.counts = [0] * n

    def _accept(self, index: int, multiplicity: int) -> None:
        if index >= len(self.counts):
            raise SinkBoundsError(index=index, size=len(self.counts))
        self.counts[index] += multiplicity

    def result(self) -> SampleCounts:
        return SampleCounts(representation=CountsRepresentation.DENSE, dense=self.counts, total=self.total)


class SparseCollector(SampleSink):
    """Counts in a hash map keyed by index"""

    def __init__(self):
        super().__init__()
        self.counts: Dict[int, int] = {}

    def _accept(self, index: int, multiplicity: int) -> None:
        self.counts[index] = self.counts.get(index, 0) + multiplicity

    def result(self) -> SampleCounts:
        return SampleCounts(representation=CountsRepresentation.SPARSE, sparse=self.counts, total=self.total)


class ArrayCollector(SampleSink):
    """The length-s sample with repetitions, in traversal order"""

    def __init__(self):
        super().__init__()
        self.items: List[int] = []

    def _accept(self, index: int, multiplicity: int) -> None:
        self.items.extend([index] * multiplicity)

    def result(self) -> List[int]:
        return self.items


class CallbackSink(SampleSink):
    """Hands each emission straight to a callable"""

    def __init__(self, callback: Callable[[int, int], None]):
        super().__init__()
        self._callback = callback

    def _accept(self, index: int, multiplicity: int) -> None:
        self._callback(index, multiplicity)


class CoalescingSink(SampleSink):
    """Merges consecutive emissions for the same index before forwarding"""

    def __init__(self, inner: SampleSink):
        super().__init__()
        self.inner = inner
        self._pending_index = -1
        self._pending = 0

    def _accept(self, index: int, multiplicity: int) -> None:
        if index == self._pending_index:
            self._pending += multiplicity
            return
        self._flush()
        self._pending_index = index
        self._pending = multiplicity

    def _flush(self) -> None:
        if self._pending:
            self.inner.accept(self._pending_index, self._pending)
            self._pending = 0

    def close(self) -> None:
        self._flush()
        self.inner.close()

    def result(self) -> Any:
        return self.inner.result()


class RecordingSink(SampleSink):
    """Forwards emissions and logs ("emit", index, multiplicity) events"""

    def __init__(self, inner: SampleSink, events: Optional[List[Event]] = None):
        super().__init__()
        self.inner = inner
        self.events = events if events is not None else []

    def _accept(self, index: int, multiplicity: int) -> None:
        self.events.append(("emit", index, multiplicity))
        self.inner.accept(index, multiplicity)

    def close(self) -> None:
        self.inner.close()

    def result(self) -> Any:
        return self.inner.result()
