"""Deterministic English feedback from fixed templates.

Every discrepancy message carries a stable code (VPS-W01..W12) so front
ends can translate or restyle without parsing English.
"""

from __future__ import annotations

from .compare import Discrepancy, FeedbackReport, SAME_AREA

CODES = {
    "MissingReference": "VPS-W01",
    "ExtraReference": "VPS-W02",
    "WrongTarget": "VPS-W03",
    "WrongPrimitiveValue": "VPS-W04",
    "MissingNode": "VPS-W05",
    "ExtraNode": "VPS-W06",
    "WrongNodeType": "VPS-W07",
    "MissingRow": "VPS-W08",
    "ExtraRow": "VPS-W09",
    "WrongArrayLength": "VPS-W10",
    "WrongCellValue": "VPS-W11",
    "BrokenAliasing": "VPS-W12",
}

_TEMPLATES = {
    "MissingReference": "Your diagram is missing the reference '{subject}'; the machine has {expected}.",
    "ExtraReference": "Your diagram has an extra reference '{subject}' that the machine does not have.",
    "WrongTarget": "The reference {subject} points to {actual}, but it should point to {expected}.",
    "WrongPrimitiveValue": "The value of {subject} is {actual}, but it should be {expected}.",
    "MissingNode": "Your diagram is missing the memory area {subject} ({expected}).",
    "ExtraNode": "Your diagram has an extra memory area {subject} ({actual}) that the machine does not have.",
    "WrongNodeType": "The memory area {subject} should be {expected}, but your diagram shows {actual}.",
    "MissingRow": "The memory area row {subject} is missing; the machine has {expected}.",
    "ExtraRow": "Your diagram has an extra row {subject} that the machine does not have.",
    "WrongArrayLength": "The array {subject} has length {actual}, but it should have length {expected}.",
    "WrongCellValue": "The array cell {subject} holds {actual}, but it should hold {expected}.",
}

_ALIAS_BROKEN = (
    "The references {subject} should point to the same memory area, "
    "but in your diagram they do not."
)
_ALIAS_INVENTED = (
    "The references {subject} point to the same memory area in your diagram, "
    "but they should point to different ones."
)


def message_for(d: Discrepancy) -> str:
    code = CODES[d.kind]
    if d.kind == "BrokenAliasing":
        template = _ALIAS_BROKEN if d.expected == SAME_AREA else _ALIAS_INVENTED
    else:
        template = _TEMPLATES[d.kind]
    body = template.format(subject=d.subject, expected=d.expected, actual=d.actual)
    return f"{code}: {body}"


def build_messages(equivalent: bool, matched: int, total: int,
                   discrepancies: tuple[Discrepancy, ...]) -> list[str]:
    summary = f"Your diagram matches {matched} of {total} elements."
    if equivalent:
        summary += " It is equivalent to the machine's representation."
    return [summary] + [message_for(d) for d in discrepancies]


def render_feedback(report: FeedbackReport) -> list[str]:
    """The report's text: summary first, then one line per discrepancy."""
    return list(report.messages)
