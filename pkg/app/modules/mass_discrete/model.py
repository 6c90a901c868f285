from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Iterator, List, Optional, Tuple

from pydantic import BaseModel, Field

from ..samplers.model import WalkStats

SupportPoint = Tuple[Any, float]


class PmfEnumerator(ABC):
    """
    Yields (value, mass) pairs over a discrete support, each value at most
    once, until ``next()`` returns None.
    """

    def __init__(self):
        self.emitted = 0

    def next(self) -> Optional[SupportPoint]:
        item = self._advance()
        if item is not None:
            self.emitted += 1
        return item

    @abstractmethod
    def _advance(self) -> Optional[SupportPoint]:
        ...

    def __iter__(self) -> Iterator[SupportPoint]:
        while (item := self.next()) is not None:
            yield item


@dataclass(slots=True)
class MassSample:
    """(value, count) pairs in traversal order plus the walk counters"""
    pairs: List[Tuple[Any, int]] = field(default_factory=list)
    support_consumed: int = 0
    stats: WalkStats = field(default_factory=WalkStats)

    @property
    def size(self) -> int:
        return sum(count for _, count in self.pairs)


class MassSampleSummary(BaseModel):
    s: int = Field(..., ge=0, description="Sample size")
    mean: float = Field(..., description="Empirical mean of the sampled values")
    variance: float = Field(..., description="Empirical variance (n - 1 denominator)")
    support_consumed: int = Field(..., ge=0, description="Support points pulled from the enumerator")
    wall_ns: int = Field(..., ge=0, description="Wall time of the sampling call")
    rng_draws: int = Field(0, ge=0, description="Uniforms consumed")


class PoissonRequest(BaseModel):
    lam: float = Field(..., gt=0, description="Poisson rate")
    s: int = Field(..., ge=0, description="Sample size")
    seed: Optional[int] = Field(None, ge=0, description="Seed for the uniform source")
