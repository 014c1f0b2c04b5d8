"""Shared test plumbing: corpus loading and oracle-state conversion."""

from __future__ import annotations

from pathlib import Path

from vps import parse_program, validate
from vps.machine import ArrayNode, Frame, MachineState, ObjectNode, Trace, run_to_end
from vps.machine.values import BoolV, CharV, DoubleV, IntV, NullV, RefV, StrV

CORPUS = Path(__file__).parent.parent / "corpus"
ANSWERS = CORPUS / "answers"


def corpus_source(name: str) -> str:
    return (CORPUS / name).read_text(encoding="utf-8")


def load_corpus(name: str):
    source = corpus_source(name)
    return source, validate(parse_program(source))


def run_corpus(name: str, max_steps: int = 10000) -> Trace:
    source, program = load_corpus(name)
    return run_to_end(program, max_steps=max_steps, source_text=source)


def load_source(source: str):
    return validate(parse_program(source))


def tagged_to_value(tagged):
    tag = tagged[0]
    if tag == "int":
        return IntV(tagged[1])
    if tag == "double":
        return DoubleV(tagged[1])
    if tag == "bool":
        return BoolV(tagged[1])
    if tag == "char":
        return CharV(tagged[1])
    if tag == "str":
        return StrV(tagged[1])
    if tag == "null":
        return NullV()
    if tag == "ref":
        return RefV(tagged[1])
    raise AssertionError(tagged)


def oracle_state(env: dict, heap: dict) -> MachineState:
    """Build a MachineState from the desk oracle's (env, heap) for snapshot_equal."""
    frames = (Frame("main", tuple((n, tagged_to_value(v)) for n, v in env.items())),)
    nodes = []
    for hid in sorted(heap):
        node = heap[hid]
        if node[0] == "array":
            nodes.append((hid, ArrayNode(node[1], tuple(tagged_to_value(v) for v in node[2]))))
        else:
            nodes.append(
                (hid, ObjectNode(node[1], tuple((f, tagged_to_value(v)) for f, v in node[2].items())))
            )
    return MachineState(
        step_index=0, frames=frames, heap=tuple(nodes), status="finished",
        error=None, next_line=None,
    )


def ref_count(state: MachineState) -> int:
    """Number of RefV occurrences in frames and heap nodes."""
    count = 0
    for frame in state.frames:
        for _n, v in frame.bindings:
            if isinstance(v, RefV):
                count += 1
    for _hid, node in state.heap:
        values = node.cells if isinstance(node, ArrayNode) else tuple(v for _f, v in node.fields)
        for v in values:
            if isinstance(v, RefV):
                count += 1
    return count
