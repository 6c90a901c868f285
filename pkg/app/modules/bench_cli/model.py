from enum import Enum
from typing import List

from pydantic import BaseModel, Field

from ..samplers.model import SamplerName
from ..stream_api.model import OutputMode

CSV_HEADER = ["algorithm", "population", "n", "s", "seed", "wall_ns", "rng_draws", "output_mode"]


class PopulationKind(str, Enum):
    """Benchmark populations: iid uniform, geometric from 1 down to 1e-100, Gaussian pdf on [0, 10]"""
    UNIFORM = "uniform"
    GEOMETRIC = "geometric"
    GAUSSIAN = "gaussian"


class PopulationSpec(BaseModel):
    kind: PopulationKind = Field(..., description="Population family")
    n: int = Field(..., description="Population size")
    seed: int = Field(..., ge=0, description="Seed for values and the shuffle")


class BenchRecord(BaseModel):
    """One benchmark grid cell; rng_draws is the uniform counter delta of the timed run"""
    algorithm: SamplerName
    population: PopulationKind
    n: int = Field(..., ge=1)
    s: int = Field(..., ge=0)
    seed: int
    wall_ns: int = Field(..., ge=0)
    rng_draws: int = Field(..., ge=0)
    output_mode: OutputMode

    def to_row(self) -> List[str]:
        return [
            self.algorithm.value,
            self.population.value,
            str(self.n),
            str(self.s),
            str(self.seed),
            str(self.wall_ns),
            str(self.rng_draws),
            self.output_mode.value,
        ]


class PopulationRequest(BaseModel):
    kind: PopulationKind
    n: int = Field(..., ge=1, le=1_000_000)
    seed: int = Field(0, ge=0)


class PopulationResponse(BaseModel):
    kind: PopulationKind
    n: int
    seed: int
    weights: List[float]
