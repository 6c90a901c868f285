from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from ...config.my_settings import settings
from ..rng_core.model import KahanAccumulator
from ..stream_api.model import OutputMode, SampleCounts
from .error_models import InvalidConfigError


class SamplerName(str, Enum):
    """Registered sampling algorithms"""
    NAIVE = "naive"
    SORTED = "sorted"
    BETA = "beta"
    BINOM = "binom"
    HYBRID = "hybrid"
    ALIAS = "alias"


class HybridConfig(BaseModel):
    """Mode-switch threshold and hard cap on consecutive beta landings per element"""
    theta: float = Field(default=1.0, description="Expected-occupancy threshold below which beta steps are taken")
    beta_run_limit: int = Field(default=16, description="Consecutive beta landings in one element before a forced binomial step")

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _check_ranges(self) -> "HybridConfig":
        if not self.theta > 0:
            raise InvalidConfigError("theta must be positive", field="theta", value=self.theta)
        if self.beta_run_limit < 1:
            raise InvalidConfigError("beta_run_limit must be at least 1", field="beta_run_limit", value=self.beta_run_limit)
        return self

    @classmethod
    def from_settings(cls) -> "HybridConfig":
        return cls(theta=settings.HYBRID_THETA, beta_run_limit=settings.BETA_RUN_LIMIT)


@dataclass(slots=True)
class HybridCursor:
    """The whole driver state of the hybrid walk; nothing grows with n or s."""
    current_position: float = 0.0
    remaining: int = 0
    index: int = -1
    cum_prob: KahanAccumulator = field(default_factory=KahanAccumulator)
    beta_run: int = 0


@dataclass(slots=True)
class WalkStats:
    """Per-run step counters reported by every sampler"""
    beta_steps: int = 0
    binomial_steps: int = 0
    forced_binomial_steps: int = 0
    mode_switches: int = 0
    elements_pulled: int = 0
    residual_assigned: int = 0

    @property
    def variates(self) -> int:
        return self.beta_steps + self.binomial_steps


@dataclass(slots=True)
class AliasTable:
    """Walker alias table: column i keeps i with prob[i], else yields alias[i]"""
    n: int
    prob: List[float]
    alias: List[int]


class SampleResult(BaseModel):
    """Outcome of one named sampler run, as served to the CLI and HTTP surfaces"""
    algorithm: SamplerName
    n: int
    s: int
    output_mode: OutputMode
    counts: Optional[SampleCounts] = None
    array: Optional[List[int]] = None
    rng_draws: int = Field(..., ge=0, description="Uniforms consumed by the run")
    elements_pulled: int = Field(..., ge=0, description="Population weights read")
    stats: Dict[str, int] = Field(default_factory=dict)


class SampleRequest(BaseModel):
    """Request body for sampling a finite weight list"""
    algorithm: SamplerName = Field(default=SamplerName.HYBRID, description="Sampler to run")
    weights: List[float] = Field(..., description="Nonnegative weights, normalized unless total is given")
    s: int = Field(..., ge=0, description="Sample size")
    total: Optional[float] = Field(None, gt=0, description="Declared total mass of unnormalized weights")
    seed: Optional[int] = Field(None, ge=0, description="Seed for the uniform source; server default when omitted")
    output: OutputMode = Field(default=OutputMode.SPARSE, description="array, dense or sparse")
    theta: Optional[float] = Field(None, gt=0, description="Hybrid mode-switch threshold")
    beta_run_limit: Optional[int] = Field(None, ge=1, description="Hybrid cap on beta landings per element")


class SamplerInfo(BaseModel):
    name: SamplerName
    streaming: bool
    description: str
