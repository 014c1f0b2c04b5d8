"""Immutable machine-state snapshots and traces."""

from __future__ import annotations

from dataclasses import dataclass, field

from .values import Value

RUNNING = "running"
FINISHED = "finished"
ERROR = "error"

# step event kinds
KINDS = ("decl", "assign", "call", "return", "print", "branch", "alloc", "halt")


@dataclass(frozen=True)
class HeapNode:
    pass


@dataclass(frozen=True)
class ArrayNode(HeapNode):
    elem_type: str
    cells: tuple[Value, ...]


@dataclass(frozen=True)
class ObjectNode(HeapNode):
    class_name: str
    fields: tuple[tuple[str, Value], ...]  # declaration order

    def field(self, name: str) -> Value:
        for n, v in self.fields:
            if n == name:
                return v
        raise KeyError(name)


@dataclass(frozen=True)
class Frame:
    label: str
    bindings: tuple[tuple[str, Value], ...]  # declaration order

    def binding(self, name: str) -> Value:
        for n, v in self.bindings:
            if n == name:
                return v
        raise KeyError(name)

    def has(self, name: str) -> bool:
        return any(n == name for n, _ in self.bindings)


@dataclass(frozen=True)
class MachineState:
    """One snapshot: call-frame stack plus numbered heap memory areas.

    `seq` is an internal resume cursor (events consumed so far in the
    producing run); it takes no part in equality or rendering.
    """

    step_index: int
    frames: tuple[Frame, ...]
    heap: tuple[tuple[int, HeapNode], ...]
    status: str
    error: str | None
    next_line: int | None
    seq: int = field(default=0, compare=False, repr=False)

    def node(self, heap_id: int) -> HeapNode:
        for hid, node in self.heap:
            if hid == heap_id:
                return node
        raise KeyError(heap_id)

    def top_frame(self) -> Frame:
        return self.frames[-1]


@dataclass(frozen=True)
class TraceEvent:
    step_index: int
    line: int
    kind: str
    description: str
    state: MachineState


@dataclass(frozen=True)
class Trace:
    source_text: str
    program_name: str
    events: tuple[TraceEvent, ...]
    output: tuple[str, ...]
    final_status: str

    @property
    def final_state(self) -> MachineState:
        return self.events[-1].state


def snapshot_equal(a: MachineState, b: MachineState) -> bool:
    """Structural equality of frames and heap, heap ids compared literally."""
    return a.frames == b.frames and a.heap == b.heap
