"""DOT rendering: record-shaped nodes, one port per row, left-to-right."""

from __future__ import annotations

from ..machine.values import render_inline
from .model import Diagram, EdgeTo, Inline, NodeBox, NullMark

_HEADER = ["digraph vps {", "  rankdir=LR;", '  node [fontname="Courier", shape=record];']


def _rec_escape(text: str) -> str:
    out = []
    for ch in text:
        if ch in "\\|{}<>\"":
            out.append("\\" + ch)
        else:
            out.append(ch)
    return "".join(out)


def _row_text(node: NodeBox, key: str, content) -> str:
    if node.kind == "array":
        if isinstance(content, Inline):
            return f"{key}: {render_inline(content.value)}"
        if isinstance(content, NullMark):
            return f"{key}: null"
        return key
    if isinstance(content, Inline):
        return f"{key} = {render_inline(content.value)}"
    if isinstance(content, NullMark):
        return f"{key} = null"
    return key


def emit_dot(d: Diagram) -> str:
    """Deterministic DOT text; equal canonical diagrams emit identical bytes."""
    lines = list(_HEADER)
    frames = d.frames
    frame_index = {label: i for i, label in enumerate(frames)}

    def root_id(r) -> str:
        return f"r{frame_index[r.frame]}_{r.name}"

    for r in d.roots:
        if isinstance(r.content, Inline):
            label = f"{_rec_escape(r.name)}|{_rec_escape(render_inline(r.content.value))}"
        elif isinstance(r.content, NullMark):
            label = f"{_rec_escape(r.name)}|null"
        else:
            label = _rec_escape(r.name)
        lines.append(f'  "{root_id(r)}" [label="{label}"];')

    for n in d.nodes:
        cells = []
        for i, row in enumerate(n.rows):
            cells.append(f"<p{i}> {_rec_escape(_row_text(n, row.key, row.content))}")
        body = "|".join(cells)
        if body:
            label = f"{{{_rec_escape(n.title)}|{{{body}}}}}"
        else:
            label = f"{{{_rec_escape(n.title)}}}"
        lines.append(f'  "n_{n.label}" [label="{label}"];')

    for r in d.roots:
        if isinstance(r.content, EdgeTo):
            lines.append(f'  "{root_id(r)}" -> "n_{r.content.target}";')
    for n in d.nodes:
        for i, row in enumerate(n.rows):
            if isinstance(row.content, EdgeTo):
                lines.append(f'  "n_{n.label}":p{i} -> "n_{row.content.target}";')

    lines.append("}")
    return "\n".join(lines) + "\n"
