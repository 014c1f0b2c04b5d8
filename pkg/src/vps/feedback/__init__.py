"""Student diagram grading: VPS-D parsing, comparison, templated feedback."""

from .compare import Discrepancy, FeedbackReport, KINDS, compare, report_to_json
from .messages import CODES, message_for, render_feedback
from .vpsd import VpsdSyntaxError, emit_vpsd, parse_vpsd

__all__ = [
    "CODES",
    "Discrepancy",
    "FeedbackReport",
    "KINDS",
    "VpsdSyntaxError",
    "compare",
    "emit_vpsd",
    "message_for",
    "parse_vpsd",
    "render_feedback",
    "report_to_json",
]
