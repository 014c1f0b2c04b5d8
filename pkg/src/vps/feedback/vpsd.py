"""VPS-D: the textual diagram language students write answers in.

    frame main
    ref ref_p -> @a
    ref ref2 -> @a
    heap
    @a Person { rut = "000", edad = 56 }

One frame section per rendered frame (a single `frame main` in the common
case), then `heap` with one line per memory area. Heap labels are the
student's own; grading compares diagrams up to relabeling.
"""

from __future__ import annotations

import re

from ..lang.lexer import unescape_text
from ..machine.values import (
    BoolV,
    CharV,
    DoubleV,
    IntV,
    StrV,
    Value,
    render_inline,
)
from ..diagram.model import Diagram, EdgeTo, Inline, NodeBox, NullMark, RootBox, Row

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<arrow>->)
      | (?P<neginf>-Infinity)
      | (?P<num>-?\d+(\.\d+)?([eE][+-]?\d+)?)
      | (?P<label>@[A-Za-z0-9_]+)
      | (?P<word>[A-Za-z_][A-Za-z0-9_.]*)
      | (?P<string>"(\\.|[^"\\\n])*")
      | (?P<char>'(\\.|[^'\\\n])')
      | (?P<punct>[={}\[\],])
    """,
    re.VERBOSE,
)


class VpsdSyntaxError(Exception):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.message = message
        self.line = line


def _lex_line(text: str, line_no: int) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise VpsdSyntaxError(f"unexpected character {text[pos]!r}", line_no)
        pos = m.end()
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group()))
    return tokens


def _literal_value(kind: str, text: str, line_no: int) -> Value:
    if kind == "string":
        return StrV(unescape_text(text))
    if kind == "char":
        return CharV(unescape_text(text))
    if kind == "neginf":
        return DoubleV(float("-inf"))
    if kind == "num":
        if "." in text or "e" in text or "E" in text:
            return DoubleV(float(text))
        return IntV(int(text))
    if kind == "word":
        if text == "true":
            return BoolV(True)
        if text == "false":
            return BoolV(False)
        if text == "Infinity":
            return DoubleV(float("inf"))
        if text == "NaN":
            return DoubleV(float("nan"))
    raise VpsdSyntaxError(f"expected a literal, found {text!r}", line_no)


class _LineParser:
    def __init__(self, tokens: list[tuple[str, str]], line_no: int):
        self.tokens = tokens
        self.pos = 0
        self.line_no = line_no

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise VpsdSyntaxError("unexpected end of line", self.line_no)
        self.pos += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> str:
        tok = self.peek()
        if tok is None or tok[0] != kind or (text is not None and tok[1] != text):
            want = text if text is not None else kind
            found = tok[1] if tok else "end of line"
            raise VpsdSyntaxError(f"expected {want!r}, found {found!r}", self.line_no)
        self.pos += 1
        return tok[1]

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def require_end(self) -> None:
        if not self.at_end():
            raise VpsdSyntaxError(f"unexpected {self.tokens[self.pos][1]!r}", self.line_no)


def parse_vpsd(text: str) -> Diagram:
    """Parse VPS-D text; node labels keep the student's tags (without '@')."""
    roots: list[RootBox] = []
    nodes: list[NodeBox] = []
    node_labels: set[str] = set()
    edge_refs: list[tuple[int, str]] = []  # (line, target) for closure check
    frame_names: list[str] = []
    bound: set[tuple[str, str]] = set()
    section = "start"  # start -> frame -> heap
    current_frame = ""
    last_line = 1

    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = _lex_line(raw, line_no)
        if not tokens:
            continue
        last_line = line_no
        p = _LineParser(tokens, line_no)
        kind, word = tokens[0]

        if kind == "word" and word == "frame":
            if section == "heap":
                raise VpsdSyntaxError("'frame' section after 'heap'", line_no)
            p.next()
            current_frame = p.expect("word")
            if current_frame in frame_names:
                raise VpsdSyntaxError(f"duplicate frame '{current_frame}'", line_no)
            frame_names.append(current_frame)
            p.require_end()
            section = "frame"
            continue

        if kind == "word" and word == "heap":
            if section == "start":
                raise VpsdSyntaxError("expected 'frame' before 'heap'", line_no)
            if section == "heap":
                raise VpsdSyntaxError("duplicate 'heap' section", line_no)
            p.next()
            p.require_end()
            section = "heap"
            continue

        if kind == "word" and word in ("var", "ref"):
            if section != "frame":
                where = "before any 'frame'" if section == "start" else "inside 'heap'"
                raise VpsdSyntaxError(f"binding line {where}", line_no)
            p.next()
            name = p.expect("word")
            if (current_frame, name) in bound:
                raise VpsdSyntaxError(f"duplicate binding '{name}'", line_no)
            bound.add((current_frame, name))
            if word == "var":
                p.expect("punct", "=")
                vkind, vtext = p.next()
                value = _literal_value(vkind, vtext, line_no)
                p.require_end()
                roots.append(RootBox(current_frame, name, Inline(value)))
            else:
                tok = p.next()
                if tok == ("punct", "="):
                    p.expect("word", "null")
                    p.require_end()
                    roots.append(RootBox(current_frame, name, NullMark()))
                elif tok[0] == "arrow":
                    label = p.expect("label")[1:]
                    p.require_end()
                    edge_refs.append((line_no, label))
                    roots.append(RootBox(current_frame, name, EdgeTo(label)))
                else:
                    raise VpsdSyntaxError(f"expected '->' or '= null', found {tok[1]!r}", line_no)
            continue

        if kind == "label":
            if section != "heap":
                raise VpsdSyntaxError("node line outside the 'heap' section", line_no)
            nodes.append(_parse_node_line(p, node_labels, edge_refs, line_no))
            continue

        raise VpsdSyntaxError(f"unexpected {word!r}", line_no)

    if section == "start":
        raise VpsdSyntaxError("empty input: expected 'frame'", last_line)
    if section == "frame":
        raise VpsdSyntaxError("missing 'heap' section", last_line)

    for line_no, target in edge_refs:
        if target not in node_labels:
            raise VpsdSyntaxError(f"edge to undeclared node '@{target}'", line_no)
    return Diagram(tuple(roots), tuple(nodes), tuple(frame_names))


def _parse_node_line(p: _LineParser, node_labels: set[str],
                     edge_refs: list[tuple[int, str]], line_no: int) -> NodeBox:
    label = p.expect("label")[1:]
    if label in node_labels:
        raise VpsdSyntaxError(f"duplicate node label '@{label}'", line_no)
    node_labels.add(label)
    type_name = p.expect("word")

    nxt = p.next()
    if nxt == ("punct", "{"):
        rows: list[Row] = []
        keys: set[str] = set()
        if p.peek() == ("punct", "}"):
            p.next()
        else:
            while True:
                key = p.expect("word")
                if key in keys:
                    raise VpsdSyntaxError(f"duplicate row '{key}'", line_no)
                keys.add(key)
                tok = p.next()
                if tok[0] == "arrow":
                    target = p.expect("label")[1:]
                    edge_refs.append((line_no, target))
                    rows.append(Row(key, EdgeTo(target)))
                elif tok == ("punct", "="):
                    vkind, vtext = p.next()
                    if (vkind, vtext) == ("word", "null"):
                        rows.append(Row(key, NullMark()))
                    else:
                        rows.append(Row(key, Inline(_literal_value(vkind, vtext, line_no))))
                else:
                    raise VpsdSyntaxError(f"expected '=' or '->', found {tok[1]!r}", line_no)
                tok = p.next()
                if tok == ("punct", "}"):
                    break
                if tok != ("punct", ","):
                    raise VpsdSyntaxError(f"expected ',' or '}}', found {tok[1]!r}", line_no)
        p.require_end()
        return NodeBox(label, "object", type_name, tuple(rows))

    if nxt != ("punct", "["):
        raise VpsdSyntaxError(f"expected '{{' or '[', found {nxt[1]!r}", line_no)
    # `int[] [cells]` writes the element type with a [] suffix; `int [cells]`
    # is accepted too. An empty first bracket pair followed by another '['
    # is the suffix, otherwise it is an empty cell list.
    if p.peek() == ("punct", "]"):
        p.next()
        if p.at_end():
            return NodeBox(label, "array", type_name + "[]", ())
        p.expect("punct", "[")
        if p.peek() == ("punct", "]"):
            p.next()
            p.require_end()
            return NodeBox(label, "array", type_name + "[]", ())

    cells: list[Row] = []
    while True:
        tok = p.next()
        if tok[0] == "arrow":
            target = p.expect("label")[1:]
            edge_refs.append((line_no, target))
            cells.append(Row(str(len(cells)), EdgeTo(target)))
        elif tok == ("word", "null"):
            cells.append(Row(str(len(cells)), NullMark()))
        else:
            cells.append(Row(str(len(cells)), Inline(_literal_value(tok[0], tok[1], line_no))))
        tok = p.next()
        if tok == ("punct", "]"):
            break
        if tok != ("punct", ","):
            raise VpsdSyntaxError(f"expected ',' or ']', found {tok[1]!r}", line_no)
    p.require_end()
    return NodeBox(label, "array", type_name + "[]", tuple(cells))


def emit_vpsd(d: Diagram) -> str:
    """Serialize a diagram to VPS-D; parse_vpsd(emit_vpsd(d)) canonicalizes equal to d."""
    lines: list[str] = []
    frames = d.frames if d.roots else ("main",)
    for frame in frames:
        lines.append(f"frame {frame}")
        for r in d.roots:
            if r.frame != frame:
                continue
            c = r.content
            if isinstance(c, Inline):
                lines.append(f"var {r.name} = {render_inline(c.value)}")
            elif isinstance(c, EdgeTo):
                lines.append(f"ref {r.name} -> @{c.target}")
            else:
                lines.append(f"ref {r.name} = null")
    lines.append("heap")
    for n in d.nodes:
        if n.kind == "array":
            cells = []
            for row in n.rows:
                c = row.content
                if isinstance(c, Inline):
                    cells.append(render_inline(c.value))
                elif isinstance(c, EdgeTo):
                    cells.append(f"-> @{c.target}")
                else:
                    cells.append("null")
            lines.append(f"@{n.label} {n.title} [{', '.join(cells)}]")
        else:
            rows = []
            for row in n.rows:
                c = row.content
                if isinstance(c, Inline):
                    rows.append(f"{row.key} = {render_inline(c.value)}")
                elif isinstance(c, EdgeTo):
                    rows.append(f"{row.key} -> @{c.target}")
                else:
                    rows.append(f"{row.key} = null")
            body = ", ".join(rows) if rows else ""
            lines.append(f"@{n.label} {n.title} {{ {body} }}" if body else f"@{n.label} {n.title} {{ }}")
    return "\n".join(lines) + "\n"
