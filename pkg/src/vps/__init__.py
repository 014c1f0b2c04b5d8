"""Visual program simulation toolkit.

Parses a small Java-like language (MiniJava-VPS), executes it step by step
on a notional machine of named references and numbered heap memory areas,
renders every state as a box-and-arrow diagram (DOT / SVG / JSON), and
grades student-authored VPS-D diagrams against the machine's own.
"""

from .diagram import (
    CanonicalDiagram,
    Diagram,
    TraceJsonError,
    canonicalize,
    diagram_from_json,
    diagram_to_json,
    emit_dot,
    emit_svg,
    emit_trace_json,
    parse_trace_json,
    rename,
    state_to_diagram,
)
from .feedback import (
    Discrepancy,
    FeedbackReport,
    VpsdSyntaxError,
    compare,
    emit_vpsd,
    parse_vpsd,
    render_feedback,
    report_to_json,
)
from .lang import (
    LexError,
    ParseError,
    ValidationError,
    ValidationFailure,
    ast_to_dict,
    check,
    parse_program,
    pretty_print,
    tokenize,
    validate,
)
from .machine import (
    MachineError,
    MachineState,
    Trace,
    TraceEvent,
    init_machine,
    read_path,
    run_to_end,
    snapshot_equal,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalDiagram",
    "Diagram",
    "Discrepancy",
    "FeedbackReport",
    "LexError",
    "MachineError",
    "MachineState",
    "ParseError",
    "Trace",
    "TraceEvent",
    "TraceJsonError",
    "ValidationError",
    "ValidationFailure",
    "VpsdSyntaxError",
    "ast_to_dict",
    "canonicalize",
    "check",
    "compare",
    "diagram_from_json",
    "diagram_to_json",
    "emit_dot",
    "emit_svg",
    "emit_trace_json",
    "emit_vpsd",
    "init_machine",
    "parse_program",
    "parse_trace_json",
    "parse_vpsd",
    "pretty_print",
    "read_path",
    "rename",
    "render_feedback",
    "report_to_json",
    "run_to_end",
    "snapshot_equal",
    "state_to_diagram",
    "step",
    "tokenize",
    "validate",
]
