"""Standalone SVG rendering of diagrams.

Layout is layered left to right: frame roots in the leftmost column, heap
nodes in breadth-first layers after it. All measurements come from a fixed
character-width table (monospace, 8px per character) so the output is
byte-identical across platforms; no system font is ever measured.
"""

from __future__ import annotations

from ..machine.values import render_inline
from .dot import _row_text
from .model import Diagram, EdgeTo, Inline, NullMark

CHAR_W = 8
ROW_H = 22
PAD = 10
V_GAP = 12
NODE_V_GAP = 26
COL_GAP = 90
MARGIN = 16
FONT = f'font-family="monospace" font-size="13"'


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _w(text: str) -> int:
    return len(text) * CHAR_W + 2 * PAD


def emit_svg(d: Diagram) -> str:
    """Deterministic SVG; equal canonical diagrams emit identical bytes."""
    parts: list[str] = []
    edges: list[tuple[int, int, str, str, str]] = []  # x1, y1, from, to (+ anchor)

    # --- left column: frames and their root boxes ---
    root_texts = []
    y = MARGIN
    max_root_right = MARGIN
    root_anchor: dict[tuple[str, str], tuple[int, int]] = {}
    for frame in d.frames:
        root_texts.append((MARGIN, y + ROW_H - 8, frame, "frame-label"))
        y += ROW_H
        for r in d.roots:
            if r.frame != frame:
                continue
            name_w = _w(r.name)
            x = MARGIN
            parts.append(
                f'<rect x="{x}" y="{y}" width="{name_w}" height="{ROW_H}" '
                f'class="name-box" fill="#fff" stroke="#333"/>'
            )
            root_texts.append((x + PAD, y + ROW_H - 7, r.name, "root-name"))
            if isinstance(r.content, (Inline, NullMark)):
                text = (
                    render_inline(r.content.value)
                    if isinstance(r.content, Inline)
                    else "null"
                )
                vw = _w(text)
                parts.append(
                    f'<rect x="{x + name_w}" y="{y}" width="{vw}" height="{ROW_H}" '
                    f'class="value-box" fill="#fff" stroke="#333"/>'
                )
                root_texts.append((x + name_w + PAD, y + ROW_H - 7, text, "root-value"))
                max_root_right = max(max_root_right, x + name_w + vw)
            else:
                root_anchor[(r.frame, r.name)] = (x + name_w, y + ROW_H // 2)
                max_root_right = max(max_root_right, x + name_w)
            y += ROW_H + V_GAP
        y += V_GAP
    roots_bottom = y

    # --- breadth-first layers for nodes ---
    depth: dict[str, int] = {}
    queue: list[str] = []
    for r in d.roots:
        if isinstance(r.content, EdgeTo) and r.content.target not in depth:
            depth[r.content.target] = 0
            queue.append(r.content.target)
    qi = 0
    while qi < len(queue):
        label = queue[qi]
        qi += 1
        for row in d.node(label).rows:
            if isinstance(row.content, EdgeTo) and row.content.target not in depth:
                depth[row.content.target] = depth[label] + 1
                queue.append(row.content.target)
    overflow = (max(depth.values()) + 1) if depth else 0
    for n in d.nodes:
        if n.label not in depth:
            depth[n.label] = overflow

    layers: dict[int, list] = {}
    for n in d.nodes:
        layers.setdefault(depth[n.label], []).append(n)

    def node_width(n) -> int:
        w = _w(n.title)
        for row in n.rows:
            w = max(w, _w(_row_text(n, row.key, row.content)))
        return max(w, 60)

    col_x: dict[int, int] = {}
    x_cursor = max_root_right + COL_GAP
    for k in sorted(layers):
        col_x[k] = x_cursor
        x_cursor += max(node_width(n) for n in layers[k]) + COL_GAP

    node_pos: dict[str, tuple[int, int, int]] = {}  # x, y, width
    node_parts: list[str] = []
    bottom = roots_bottom
    for k in sorted(layers):
        ny = MARGIN
        for n in layers[k]:
            w = node_width(n)
            x = col_x[k]
            node_pos[n.label] = (x, ny, w)
            group = [f'<g class="node" data-node="{n.label}">']
            group.append(
                f'<rect x="{x}" y="{ny}" width="{w}" height="{ROW_H}" '
                f'class="node-title" fill="#e8e8e8" stroke="#333"/>'
            )
            group.append(
                f'<text x="{x + PAD}" y="{ny + ROW_H - 7}" {FONT}>{_esc(n.title)}</text>'
            )
            ry = ny + ROW_H
            for i, row in enumerate(n.rows):
                text = _row_text(n, row.key, row.content)
                group.append(
                    f'<rect x="{x}" y="{ry}" width="{w}" height="{ROW_H}" '
                    f'class="node-row" fill="#fff" stroke="#333"/>'
                )
                group.append(
                    f'<text x="{x + PAD}" y="{ry + ROW_H - 7}" {FONT}>{_esc(text)}</text>'
                )
                if isinstance(row.content, EdgeTo):
                    anchor = f"@{n.label}[{row.key}]" if n.kind == "array" else f"@{n.label}.{row.key}"
                    edges.append((x + w, ry + ROW_H // 2, anchor, row.content.target, ""))
                ry += ROW_H
            group.append("</g>")
            node_parts.extend(group)
            ny = ry + NODE_V_GAP
        bottom = max(bottom, ny)

    single = len(d.frames) <= 1
    for r in d.roots:
        if isinstance(r.content, EdgeTo):
            x1, y1 = root_anchor[(r.frame, r.name)]
            anchor = r.name if single else f"{r.frame}.{r.name}"
            edges.append((x1, y1, anchor, r.content.target, ""))

    edge_parts: list[str] = []
    for x1, y1, anchor, target, _ in edges:
        tx, ty, _tw = node_pos[target]
        edge_parts.append(
            f'<path d="M {x1},{y1} L {tx - 4},{ty + ROW_H // 2}" fill="none" '
            f'stroke="#333" marker-end="url(#arrow)" class="edge" '
            f'data-from="{anchor}" data-to="{target}"/>'
        )

    width = max(x_cursor - COL_GAP + MARGIN, max_root_right + MARGIN, 120)
    height = max(bottom + MARGIN, 60)
    text_parts = [
        f'<text x="{tx}" y="{ty}" {FONT} class="{cls}">{_esc(text)}</text>'
        for tx, ty, text, cls in root_texts
    ]
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        "<!-- fixed metrics: 8px/char, 22px rows; no system font measurement -->\n"
        "<defs>\n"
        '<marker id="arrow" markerWidth="9" markerHeight="8" refX="8" refY="4" orient="auto">\n'
        '<path d="M0,0 L8,4 L0,8 z" fill="#333"/>\n'
        "</marker>\n"
        "</defs>\n"
        + "\n".join(text_parts + parts + node_parts + edge_parts)
        + "\n</svg>\n"
    )
