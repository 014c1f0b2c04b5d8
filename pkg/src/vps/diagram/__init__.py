"""Diagrams: box-and-arrow model, canonical form, and emitters."""

from .dot import emit_dot
from .model import (
    CanonicalDiagram,
    Content,
    Diagram,
    EdgeTo,
    Inline,
    NodeBox,
    NullMark,
    RootBox,
    Row,
    canonicalize,
    diagram_from_json,
    diagram_to_json,
    rename,
    state_to_diagram,
)
from .svg import emit_svg
from .tracejson import TraceJsonError, emit_trace_json, parse_trace_json

__all__ = [
    "CanonicalDiagram",
    "Content",
    "Diagram",
    "EdgeTo",
    "Inline",
    "NodeBox",
    "NullMark",
    "RootBox",
    "Row",
    "TraceJsonError",
    "canonicalize",
    "diagram_from_json",
    "diagram_to_json",
    "emit_dot",
    "emit_svg",
    "emit_trace_json",
    "parse_trace_json",
    "rename",
    "state_to_diagram",
]
