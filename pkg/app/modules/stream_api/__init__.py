"""
Streaming contracts and output materializers
"""
from .model import (
    WeightStream,
    ListWeightStream,
    GeneratorWeightStream,
    EnumeratorWeightStream,
    InstrumentedStream,
    SampleSink,
    DenseCollector,
    SparseCollector,
    ArrayCollector,
    CallbackSink,
    CoalescingSink,
    RecordingSink,
    SampleCounts,
    CountsRepresentation,
    OutputMode,
)
from .service import (
    stream_from_list,
    stream_from_generator,
    stream_from_enumerator,
    collect_dense,
    collect_sparse,
    collect_array,
    make_collector,
    read_weights,
    write_weights,
)
from .error_models import (
    NegativeWeightError,
    NormalizationError,
    StreamUnderflowError,
    SinkBoundsError,
    SinkOrderError,
    WeightFileError,
)
