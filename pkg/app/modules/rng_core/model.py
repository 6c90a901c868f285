"""
Domain types of the rng_core module: the counting uniform source and the
compensated accumulator.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional

import numpy as np

from ...config.my_settings import settings
from .error_models import DomainError, ScriptExhaustedError


class RngMode(str, Enum):
    """Where a CountingRng gets its uniforms from"""
    SEEDED = "seeded"
    SCRIPTED = "scripted"


class CountingRng:
    """
    Uniform [0, 1) source that counts every value it hands out.

    Seeded mode is pinned to numpy's PCG64 bit generator (``Generator.random``
    doubles, 53 bits). Values are pulled from numpy in blocks but ``draws`` only
    counts values actually served, so block size never changes the sequence or
    the counter. Scripted mode replays a fixed list and fails loudly when it
    runs dry.
    """

    __slots__ = ("seed", "mode", "draws", "_generator", "_block", "_pos", "_block_size", "_script")

    def __init__(
        self,
        seed: Optional[int] = None,
        script: Optional[Iterable[float]] = None,
        block_size: int = settings.RNG_BLOCK_SIZE,
        _generator: Optional[np.random.Generator] = None,
    ):
        self.draws = 0
        self._pos = 0
        self._block: List[float] = []
        self._block_size = max(1, int(block_size))
        if script is not None:
            values = [float(v) for v in script]
            for v in values:
                if not 0.0 <= v < 1.0:
                    raise DomainError("Scripted uniforms must lie in [0, 1)", parameter="script", value=v)
            self.mode = RngMode.SCRIPTED
            self.seed = None
            self._script = values
            self._block = values
            self._generator = None
        else:
            self.mode = RngMode.SEEDED
            self.seed = settings.DEFAULT_SEED if seed is None else int(seed)
            self._script = None
            self._generator = _generator or np.random.Generator(np.random.PCG64(self.seed))

    @classmethod
    def seeded(cls, seed: int, block_size: int = settings.RNG_BLOCK_SIZE) -> "CountingRng":
        return cls(seed=seed, block_size=block_size)

    @classmethod
    def scripted(cls, values: Iterable[float]) -> "CountingRng":
        return cls(script=values)

    def next_uniform(self) -> float:
        if self._pos == len(self._block):
            self._refill()
        value = self._block[self._pos]
        self._pos += 1
        self.draws += 1
        return value

    def uniforms(self, count: int) -> np.ndarray:
        """The next ``count`` values as an array; same sequence and counter as repeated next_uniform"""
        buffered = self._block[self._pos:self._pos + count]
        self._pos += len(buffered)
        rest = count - len(buffered)
        if rest and self._script is not None:
            raise ScriptExhaustedError(
                f"Scripted uniform source exhausted after {self.draws + len(buffered)} draws",
                draws=self.draws + len(buffered),
            )
        values = np.asarray(buffered, dtype=float)
        if rest:
            values = np.concatenate([values, self._generator.random(rest)])
        self.draws += count
        return values

    def _refill(self) -> None:
        if self._script is not None:
            raise ScriptExhaustedError(
                f"Scripted uniform source exhausted after {self.draws} draws", draws=self.draws
            )
        self._block = self._generator.random(self._block_size).tolist()
        self._pos = 0

    def spawn(self, count: int) -> List["CountingRng"]:
        """Independent child sources for parallel workers (one per worker, never shared)"""
        if self._script is not None:
            raise DomainError("Scripted sources cannot be spawned", parameter="mode", value=self.mode.value)
        children = np.random.SeedSequence(self.seed).spawn(count)
        return [
            CountingRng(seed=self.seed, block_size=self._block_size, _generator=np.random.Generator(np.random.PCG64(child)))
            for child in children
        ]

    def __repr__(self) -> str:
        return f"CountingRng(mode={self.mode.value}, seed={self.seed}, draws={self.draws})"


@dataclass(slots=True)
class KahanAccumulator:
    """Running sum with Kahan compensation; ``sum`` is the corrected total."""
    sum: float = 0.0
    compensation: float = 0.0

    def add(self, x: float) -> "KahanAccumulator":
        y = x - self.compensation
        t = self.sum + y
        self.compensation = (t - self.sum) - y
        self.sum = t
        return self

    @property
    def total(self) -> float:
        return self.sum

    def reset(self) -> None:
        self.sum = 0.0
        self.compensation = 0.0
