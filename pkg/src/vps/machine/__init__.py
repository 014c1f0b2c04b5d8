"""Notional machine: values, snapshots, and the step interpreter."""

from .interpreter import (
    DEFAULT_MAX_STEPS,
    IndexRangeError,
    MachineError,
    NullTraversalError,
    PathError,
    UnknownNameError,
    init_machine,
    read_path,
    run_to_end,
    step,
)
from .state import (
    ERROR,
    FINISHED,
    RUNNING,
    ArrayNode,
    Frame,
    HeapNode,
    MachineState,
    ObjectNode,
    Trace,
    TraceEvent,
    snapshot_equal,
)
from .values import (
    BoolV,
    CharV,
    DoubleV,
    IntV,
    NullV,
    RefV,
    StrV,
    Value,
    render_inline,
    render_plain,
)

__all__ = [
    "ArrayNode",
    "BoolV",
    "CharV",
    "DEFAULT_MAX_STEPS",
    "DoubleV",
    "ERROR",
    "FINISHED",
    "Frame",
    "HeapNode",
    "IndexRangeError",
    "IntV",
    "MachineError",
    "MachineState",
    "NullTraversalError",
    "NullV",
    "ObjectNode",
    "PathError",
    "RefV",
    "RUNNING",
    "StrV",
    "Trace",
    "TraceEvent",
    "UnknownNameError",
    "Value",
    "init_machine",
    "read_path",
    "render_inline",
    "render_plain",
    "run_to_end",
    "snapshot_equal",
    "step",
]
