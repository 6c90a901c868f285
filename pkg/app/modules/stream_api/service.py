"""
Stream constructors, collectors and the weight-file codec
"""
from pathlib import Path
from typing import Callable, List, Optional

import numpy as np

from ...config.my_settings import settings
from ...utils.my_logger import get_logger
from .error_models import WeightFileError
from .model import (
    ArrayCollector,
    DenseCollector,
    EnumeratorWeightStream,
    GeneratorWeightStream,
    ListWeightStream,
    OutputMode,
    SampleSink,
    SparseCollector,
)

logger = get_logger("STREAM_API_SERVICE")

RAW_WEIGHT_SUFFIX = ".f64"


def stream_from_list(
    weights: List[float],
    total: Optional[float] = None,
    tolerance: float = settings.CLAMP_TOLERANCE,
) -> ListWeightStream:
    return ListWeightStream(weights, total=total, tolerance=tolerance)


def stream_from_generator(fn: Callable[[int], Optional[float]]) -> GeneratorWeightStream:
    return GeneratorWeightStream(fn)


def stream_from_enumerator(enumerator) -> EnumeratorWeightStream:
    return EnumeratorWeightStream(enumerator)


def collect_dense(n: int) -> DenseCollector:
    return DenseCollector(n)


def collect_sparse() -> SparseCollector:
    return SparseCollector()


def collect_array() -> ArrayCollector:
    return ArrayCollector()


def make_collector(output: OutputMode, n: Optional[int] = None) -> SampleSink:
    """Collector for an output mode; dense needs the population size"""
    output = OutputMode(output)
    if output == OutputMode.DENSE:
        if n is None:
            raise ValueError("Dense output needs the population size")
        return collect_dense(n)
    if output == OutputMode.SPARSE:
        return collect_sparse()
    return collect_array()


def read_weights(path: str | Path) -> List[float]:
    """
    Read a weight file: one decimal weight per line, or raw little-endian
    float64 values when the file ends in ``.f64``.
    """
    path = Path(path)
    try:
        if path.suffix == RAW_WEIGHT_SUFFIX:
            raw = path.read_bytes()
            if len(raw) % 8:
                raise WeightFileError(
                    f"Raw weight file size {len(raw)} is not a multiple of 8 bytes", path=str(path)
                )
            weights = np.frombuffer(raw, dtype="<f8").tolist()
        else:
            weights = []
            for line_no, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    weights.append(float(line))
                except ValueError:
                    raise WeightFileError(f"Cannot parse weight {line!r}", path=str(path), line=line_no)
    except OSError as e:
        raise WeightFileError(f"Cannot read weight file: {e}", path=str(path))
    except UnicodeDecodeError as e:
        raise WeightFileError(f"Weight file is not valid UTF-8 text: {e}", path=str(path))

    logger.info(f"📄 Read {len(weights)} weights from {path}")
    return weights


def write_weights(path: str | Path, weights: List[float]) -> None:
    path = Path(path)
    try:
        if path.suffix == RAW_WEIGHT_SUFFIX:
            path.write_bytes(np.asarray(weights, dtype="<f8").tobytes())
        else:
            path.write_text("".join(f"{float(w)!r}\n" for w in weights), encoding="utf-8")
    except OSError as e:
        raise WeightFileError(f"Cannot write weight file: {e}", path=str(path))
    logger.info(f"💾 Wrote {len(weights)} weights to {path}")
