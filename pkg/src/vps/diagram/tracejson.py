"""Trace wire format (versioned JSON).

Document shape:

    { "version": 1, "name": <program name>, "program": <source text>,
      "output": [<println lines>],
      "events": [ { "step": k, "line": n, "kind": "...", "description": "...",
        "state": { "status": "running|finished|error", "error": <text, only on error>,
          "frames": [ { "label": "main",
                        "bindings": [ {"name": "...", "value": {...}} ] } ],
          "heap": [ {"id": 1, "kind": "object", "class": "...",
                     "rows": [{"name": "...", "value": {...}}]},
                    {"id": 2, "kind": "array", "elem": "int",
                     "rows": [{"i": 0, "value": {...}}]} ] } } ] }

Value encodings are {"t": "int"|"dbl"|"bool"|"char"|"str", "v": ...},
{"t": "null"}, and {"t": "ref", "id": n}.
"""

from __future__ import annotations

import json

from ..machine.state import (
    ERROR,
    FINISHED,
    RUNNING,
    ArrayNode,
    Frame,
    MachineState,
    ObjectNode,
    Trace,
    TraceEvent,
)
from ..machine.values import value_from_json, value_to_json

VERSION = 1


class TraceJsonError(Exception):
    """Parse failure; the message starts with a path into the document."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def emit_trace_json(trace: Trace) -> str:
    doc = {
        "version": VERSION,
        "name": trace.program_name,
        "program": trace.source_text,
        "output": list(trace.output),
        "events": [_event_json(e) for e in trace.events],
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _event_json(event: TraceEvent) -> dict:
    state = event.state
    state_doc: dict = {"status": state.status}
    if state.error is not None:
        state_doc["error"] = state.error
    state_doc["frames"] = [
        {
            "label": f.label,
            "bindings": [{"name": n, "value": value_to_json(v)} for n, v in f.bindings],
        }
        for f in state.frames
    ]
    heap = []
    for hid, node in state.heap:
        if isinstance(node, ArrayNode):
            heap.append(
                {
                    "id": hid,
                    "kind": "array",
                    "elem": node.elem_type,
                    "rows": [
                        {"i": i, "value": value_to_json(v)} for i, v in enumerate(node.cells)
                    ],
                }
            )
        else:
            heap.append(
                {
                    "id": hid,
                    "kind": "object",
                    "class": node.class_name,
                    "rows": [
                        {"name": n, "value": value_to_json(v)} for n, v in node.fields
                    ],
                }
            )
    state_doc["heap"] = heap
    return {
        "step": event.step_index,
        "line": event.line,
        "kind": event.kind,
        "description": event.description,
        "state": state_doc,
    }


def _need(obj: dict, key: str, kind, path: str):
    if not isinstance(obj, dict) or key not in obj:
        raise TraceJsonError(path, f"missing '{key}'")
    value = obj[key]
    if kind is int and isinstance(value, bool):
        raise TraceJsonError(f"{path}.{key}", "expected an integer")
    if not isinstance(value, kind):
        raise TraceJsonError(f"{path}.{key}", f"expected {kind.__name__}")
    return value


def parse_trace_json(text: str) -> Trace:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TraceJsonError("$", f"not valid JSON ({exc.msg})") from None
    if not isinstance(doc, dict):
        raise TraceJsonError("$", "expected a JSON object")
    version = _need(doc, "version", int, "$")
    if version != VERSION:
        raise TraceJsonError("$.version", f"unsupported version {version}")
    program = _need(doc, "program", str, "$")
    name = doc.get("name", "program")
    output = _need(doc, "output", list, "$")
    for i, line in enumerate(output):
        if not isinstance(line, str):
            raise TraceJsonError(f"$.output[{i}]", "expected a string")
    events_doc = _need(doc, "events", list, "$")
    if not events_doc:
        raise TraceJsonError("$.events", "must not be empty")
    events = tuple(
        _parse_event(e, f"$.events[{i}]") for i, e in enumerate(events_doc)
    )
    return Trace(
        source_text=program,
        program_name=name if isinstance(name, str) else "program",
        events=events,
        output=tuple(output),
        final_status=events[-1].state.status,
    )


def _parse_event(doc: dict, path: str) -> TraceEvent:
    step = _need(doc, "step", int, path)
    line = _need(doc, "line", int, path)
    kind = _need(doc, "kind", str, path)
    description = _need(doc, "description", str, path)
    state_doc = _need(doc, "state", dict, path)
    state = _parse_state(state_doc, f"{path}.state", step)
    return TraceEvent(step, line, kind, description, state)


def _parse_state(doc: dict, path: str, step: int) -> MachineState:
    status = _need(doc, "status", str, path)
    if status not in (RUNNING, FINISHED, ERROR):
        raise TraceJsonError(f"{path}.status", f"unknown status {status!r}")
    error = doc.get("error")
    if error is not None and not isinstance(error, str):
        raise TraceJsonError(f"{path}.error", "expected a string")
    frames_doc = _need(doc, "frames", list, path)
    frames = []
    for i, f in enumerate(frames_doc):
        fpath = f"{path}.frames[{i}]"
        label = _need(f, "label", str, fpath)
        bindings = []
        for j, b in enumerate(_need(f, "bindings", list, fpath)):
            bpath = f"{fpath}.bindings[{j}]"
            bname = _need(b, "name", str, bpath)
            try:
                value = value_from_json(_need(b, "value", dict, bpath))
            except ValueError as exc:
                raise TraceJsonError(f"{bpath}.value", str(exc)) from None
            bindings.append((bname, value))
        frames.append(Frame(label, tuple(bindings)))
    heap = []
    for i, h in enumerate(_need(doc, "heap", list, path)):
        hpath = f"{path}.heap[{i}]"
        hid = _need(h, "id", int, hpath)
        kind = _need(h, "kind", str, hpath)
        rows_doc = _need(h, "rows", list, hpath)
        if kind == "array":
            elem = _need(h, "elem", str, hpath)
            cells = []
            for j, row in enumerate(rows_doc):
                rpath = f"{hpath}.rows[{j}]"
                idx = _need(row, "i", int, rpath)
                if idx != j:
                    raise TraceJsonError(f"{rpath}.i", f"expected {j}, found {idx}")
                try:
                    cells.append(value_from_json(_need(row, "value", dict, rpath)))
                except ValueError as exc:
                    raise TraceJsonError(f"{rpath}.value", str(exc)) from None
            heap.append((hid, ArrayNode(elem, tuple(cells))))
        elif kind == "object":
            cls = _need(h, "class", str, hpath)
            fields = []
            for j, row in enumerate(rows_doc):
                rpath = f"{hpath}.rows[{j}]"
                fname = _need(row, "name", str, rpath)
                try:
                    fields.append((fname, value_from_json(_need(row, "value", dict, rpath))))
                except ValueError as exc:
                    raise TraceJsonError(f"{rpath}.value", str(exc)) from None
            heap.append((hid, ObjectNode(cls, tuple(fields))))
        else:
            raise TraceJsonError(f"{hpath}.kind", "expected 'array' or 'object'")
    return MachineState(
        step_index=step,
        frames=tuple(frames),
        heap=tuple(heap),
        status=status,
        error=error,
        next_line=None,
        seq=step + 1,
    )
