"""Box-and-arrow diagram model.

A diagram is the visual reading of a machine state: every frame binding is
a root box (inline value, outgoing arrow, or the null marker) and every
heap memory area is a node box whose rows are its fields or cells.
Canonicalization relabels nodes c1, c2, ... by a breadth-first walk from
the roots so that two diagrams that differ only in heap-id naming become
identical objects.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..machine.state import ArrayNode, MachineState, ObjectNode
from ..machine.values import (
    NullV,
    RefV,
    Value,
    render_inline,
    value_from_json,
    value_to_json,
)


@dataclass(frozen=True)
class Inline:
    value: Value


@dataclass(frozen=True)
class EdgeTo:
    target: str


@dataclass(frozen=True)
class NullMark:
    pass


Content = Inline | EdgeTo | NullMark


@dataclass(frozen=True)
class RootBox:
    frame: str
    name: str
    content: Content


@dataclass(frozen=True)
class Row:
    key: str
    content: Content


@dataclass(frozen=True)
class NodeBox:
    label: str
    kind: str  # "array" | "object"
    title: str  # class name, or elem type + "[]"
    rows: tuple[Row, ...]


@dataclass(frozen=True)
class Diagram:
    roots: tuple[RootBox, ...]
    nodes: tuple[NodeBox, ...]
    # every rendered frame, even ones with no bindings yet; when empty the
    # frame list is derived from the roots
    frame_labels: tuple[str, ...] = ()

    def node(self, label: str) -> NodeBox:
        for n in self.nodes:
            if n.label == label:
                return n
        raise KeyError(label)

    def has_node(self, label: str) -> bool:
        return any(n.label == label for n in self.nodes)

    @property
    def frames(self) -> tuple[str, ...]:
        if self.frame_labels:
            return self.frame_labels
        seen: list[str] = []
        for r in self.roots:
            if r.frame not in seen:
                seen.append(r.frame)
        return tuple(seen)

    @property
    def edges(self) -> tuple[tuple[str, str], ...]:
        """(source anchor, target label) pairs in traversal order."""
        single = len(self.frames) <= 1
        out: list[tuple[str, str]] = []
        for r in self.roots:
            if isinstance(r.content, EdgeTo):
                anchor = r.name if single else f"{r.frame}.{r.name}"
                out.append((anchor, r.content.target))
        for n in self.nodes:
            for row in n.rows:
                if isinstance(row.content, EdgeTo):
                    anchor = (
                        f"@{n.label}[{row.key}]" if n.kind == "array" else f"@{n.label}.{row.key}"
                    )
                    out.append((anchor, row.content.target))
        return tuple(out)


class CanonicalDiagram(Diagram):
    """A diagram whose node labels are c1, c2, ... in traversal order."""


def state_to_diagram(state: MachineState) -> Diagram:
    """Read a machine state as boxes and arrows.

    Every frame is rendered (outermost first, so `main` comes first);
    strings stay inline in quotes and null never draws an arrow.
    """
    roots: list[RootBox] = []
    for frame in state.frames:
        for name, value in frame.bindings:
            roots.append(RootBox(frame.label, name, _content(value)))
    nodes: list[NodeBox] = []
    for hid, heap_node in state.heap:
        label = str(hid)
        if isinstance(heap_node, ArrayNode):
            rows = tuple(
                Row(str(i), _content(v)) for i, v in enumerate(heap_node.cells)
            )
            nodes.append(NodeBox(label, "array", heap_node.elem_type + "[]", rows))
        else:
            assert isinstance(heap_node, ObjectNode)
            rows = tuple(Row(f, _content(v)) for f, v in heap_node.fields)
            nodes.append(NodeBox(label, "object", heap_node.class_name, rows))
    return Diagram(tuple(roots), tuple(nodes), tuple(f.label for f in state.frames))


def _content(value: Value) -> Content:
    if isinstance(value, RefV):
        return EdgeTo(str(value.heap_id))
    if isinstance(value, NullV):
        return NullMark()
    return Inline(value)


def canonicalize(d: Diagram) -> CanonicalDiagram:
    """Relabel nodes c1, c2, ... breadth-first from the roots.

    Roots are visited in (frame order, binding order); within a node,
    out-edges in row order. Nodes unreachable from any root follow,
    ordered by (kind, title, serialized structural signature); two
    unreachable nodes with identical signatures keep their input order,
    which is output-equivalent because they are interchangeable.
    """
    mapping: dict[str, str] = {}
    queue: list[str] = []

    def discover(label: str) -> None:
        if label not in mapping:
            mapping[label] = f"c{len(mapping) + 1}"
            queue.append(label)

    for r in d.roots:
        if isinstance(r.content, EdgeTo):
            discover(r.content.target)
    i = 0
    while i < len(queue):
        node = d.node(queue[i])
        i += 1
        for row in node.rows:
            if isinstance(row.content, EdgeTo):
                discover(row.content.target)

    unreachable = [n.label for n in d.nodes if n.label not in mapping]
    unreachable.sort(key=lambda label: _sort_key(d, label))
    for label in unreachable:
        mapping[label] = f"c{len(mapping) + 1}"

    def retarget(content: Content) -> Content:
        if isinstance(content, EdgeTo):
            return EdgeTo(mapping[content.target])
        return content

    roots = tuple(RootBox(r.frame, r.name, retarget(r.content)) for r in d.roots)
    by_new = {}
    for n in d.nodes:
        new_label = mapping[n.label]
        rows = tuple(Row(row.key, retarget(row.content)) for row in n.rows)
        by_new[new_label] = NodeBox(new_label, n.kind, n.title, rows)
    ordered = tuple(by_new[f"c{k}"] for k in range(1, len(by_new) + 1))
    return CanonicalDiagram(roots, ordered, d.frames)


def _sort_key(d: Diagram, label: str) -> tuple[str, str, str]:
    node = d.node(label)
    return (node.kind, node.title, json.dumps(_signature(d, label, {})))


def _signature(d: Diagram, label: str, seen: dict[str, int]) -> list:
    """Label-free structural rendering; shared targets become back-references."""
    if label in seen:
        return ["^", seen[label]]
    seen[label] = len(seen)
    node = d.node(label)
    rows: list = []
    for row in node.rows:
        c = row.content
        if isinstance(c, Inline):
            rows.append(["v", row.key, render_inline(c.value)])
        elif isinstance(c, NullMark):
            rows.append(["n", row.key])
        else:
            rows.append(["e", row.key, _signature(d, c.target, seen)])
    return [node.kind, node.title, rows]


def rename(d: Diagram, mapping: dict[str, str]) -> Diagram:
    """Apply a bijective relabeling of node labels (test and grading aid)."""
    labels = {n.label for n in d.nodes}
    if set(mapping) != labels or len(set(mapping.values())) != len(labels):
        raise ValueError("mapping must be a bijection over the diagram's node labels")

    def retarget(content: Content) -> Content:
        if isinstance(content, EdgeTo):
            return EdgeTo(mapping[content.target])
        return content

    roots = tuple(RootBox(r.frame, r.name, retarget(r.content)) for r in d.roots)
    nodes = tuple(
        NodeBox(mapping[n.label], n.kind, n.title,
                tuple(Row(row.key, retarget(row.content)) for row in n.rows))
        for n in d.nodes
    )
    return Diagram(roots, nodes, d.frames)


def diagram_to_json(d: Diagram) -> dict:
    """Plain-dict form used by the render command and the diagram endpoint."""
    def content_json(c: Content) -> dict:
        if isinstance(c, Inline):
            return {"value": value_to_json(c.value)}
        if isinstance(c, EdgeTo):
            return {"target": c.target}
        return {"null": True}

    return {
        "frames": list(d.frames),
        "roots": [
            {"frame": r.frame, "name": r.name, **content_json(r.content)} for r in d.roots
        ],
        "nodes": [
            {
                "label": n.label,
                "kind": n.kind,
                "title": n.title,
                "rows": [{"key": row.key, **content_json(row.content)} for row in n.rows],
            }
            for n in d.nodes
        ],
        "edges": [[a, b] for a, b in d.edges],
    }


def diagram_from_json(data: dict) -> Diagram:
    """Inverse of diagram_to_json (used by tests and the web client)."""
    def content(entry: dict) -> Content:
        if "value" in entry:
            return Inline(value_from_json(entry["value"]))
        if "target" in entry:
            return EdgeTo(entry["target"])
        return NullMark()

    roots = tuple(RootBox(r["frame"], r["name"], content(r)) for r in data["roots"])
    nodes = tuple(
        NodeBox(
            n["label"],
            n["kind"],
            n["title"],
            tuple(Row(row["key"], content(row)) for row in n["rows"]),
        )
        for n in data["nodes"]
    )
    return Diagram(roots, nodes, tuple(data.get("frames", ())))
