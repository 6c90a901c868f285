from enum import Enum
from typing import List

from pydantic import BaseModel, Field


class GofMode(str, Enum):
    """exact: every count vector is a bin; marginal: per-element totals"""
    EXACT = "exact"
    MARGINAL = "marginal"


class GofReport(BaseModel):
    """Chi-square goodness-of-fit result"""
    statistic: float = Field(..., ge=0, description="Pearson chi-square statistic")
    dof: int = Field(..., ge=0, description="Degrees of freedom (bins after pooling minus one)")
    p_value: float = Field(..., ge=0, le=1, description="Upper-tail probability Q(dof/2, statistic/2)")
    bins_pooled: int = Field(0, ge=0, description="Bins merged away by pooling")


class VerifyCase(BaseModel):
    name: str
    weights: List[float]
    s: int = Field(..., ge=0)
    replicates: int = Field(..., ge=1)


class CaseReport(BaseModel):
    """One (sampler, case) pair run over several seeds"""
    algorithm: str
    case: str
    seeds: List[int]
    p_values: List[float]
    passed: bool
