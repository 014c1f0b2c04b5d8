"""Grading: compare a student diagram to the machine's, up to relabeling.

Both diagrams are canonicalized first, so heap labels never matter; frame
reference names do. Every mismatch is classified into exactly one
discrepancy kind, and aliasing mistakes (two references that must share a
target but do not, or share one when they must not) are reported as a
single BrokenAliasing instead of a pile of WrongTarget entries.

The score is a documented, replaceable policy:

    score = clamp((matched reference elements - extra elements) / total, 0, 1)

where elements are the reference's roots, nodes, rows, and edges, and
extras are answer roots/nodes/rows the reference does not have. A score of
1.0, an empty discrepancy list, and the equivalent verdict always coincide.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..diagram.model import CanonicalDiagram, Diagram, EdgeTo, Inline, NullMark, canonicalize
from ..machine.values import render_inline

KINDS = (
    "MissingReference",
    "ExtraReference",
    "WrongTarget",
    "WrongPrimitiveValue",
    "MissingNode",
    "ExtraNode",
    "WrongNodeType",
    "MissingRow",
    "ExtraRow",
    "WrongArrayLength",
    "WrongCellValue",
    "BrokenAliasing",
)

SAME_AREA = "the same memory area"
DIFFERENT_AREAS = "different memory areas"


@dataclass(frozen=True)
class Discrepancy:
    kind: str
    subject: str
    expected: str
    actual: str


@dataclass(frozen=True)
class FeedbackReport:
    equivalent: bool
    score: float
    discrepancies: tuple[Discrepancy, ...]
    messages: tuple[str, ...]


def _content_text(content) -> str:
    if isinstance(content, Inline):
        return render_inline(content.value)
    if isinstance(content, EdgeTo):
        return f"-> @{content.target}"
    return "null"


class _Comparison:
    def __init__(self, reference: CanonicalDiagram, answer: CanonicalDiagram):
        self.ref = reference
        self.ans = answer
        self.disc: list[Discrepancy] = []
        self.matched = 0
        self.extras = 0
        self.qualify = len(reference.frames) > 1 or len(answer.frames) > 1
        # (anchor display, ref target, ans target or None) for present edge pairs
        self.edge_pairs: list[tuple[str, str, str]] = []
        self.ref_edge_count = 0

    def root_name(self, root) -> str:
        return f"{root.frame}.{root.name}" if self.qualify else root.name

    def add(self, kind: str, subject: str, expected: str, actual: str) -> None:
        self.disc.append(Discrepancy(kind, subject, expected, actual))

    def run(self) -> FeedbackReport:
        self.compare_roots()
        self.compare_nodes()
        self.compare_edges()
        total = (
            len(self.ref.roots)
            + len(self.ref.nodes)
            + sum(len(n.rows) for n in self.ref.nodes)
            + self.ref_edge_count
        )
        good = max(0, self.matched - self.extras)
        score = 1.0 if total == 0 and not self.disc else (good / total if total else 0.0)
        score = min(1.0, max(0.0, score))
        equivalent = not self.disc
        from .messages import build_messages

        messages = build_messages(equivalent, good, total, tuple(self.disc))
        return FeedbackReport(equivalent, score, tuple(self.disc), tuple(messages))

    # --- roots ---

    def compare_roots(self) -> None:
        ans_index = {(r.frame, r.name): r for r in self.ans.roots}
        ref_keys = set()
        for r in self.ref.roots:
            name = self.root_name(r)
            ref_keys.add((r.frame, r.name))
            if isinstance(r.content, EdgeTo):
                self.ref_edge_count += 1
            a = ans_index.get((r.frame, r.name))
            if a is None:
                self.add("MissingReference", name, _content_text(r.content), "(absent)")
                continue
            self.compare_slot(name, r.content, a.content, self.matched_root, "WrongPrimitiveValue")
        for a in self.ans.roots:
            if (a.frame, a.name) not in ref_keys:
                self.extras += 1
                self.add("ExtraReference", self.root_name(a), "(absent)", _content_text(a.content))

    def matched_root(self) -> None:
        self.matched += 1

    def compare_slot(self, subject: str, ref_c, ans_c, on_match, value_kind: str) -> None:
        """Compare one root or row; edges queue their target pair for later."""
        if isinstance(ref_c, Inline):
            if isinstance(ans_c, Inline) and ans_c.value == ref_c.value:
                on_match()
            else:
                self.add(value_kind, subject, _content_text(ref_c), _content_text(ans_c))
        elif isinstance(ref_c, NullMark):
            if isinstance(ans_c, NullMark):
                on_match()
            elif isinstance(ans_c, EdgeTo):
                self.add("WrongTarget", subject, "null", _content_text(ans_c))
            else:
                self.add(value_kind, subject, "null", _content_text(ans_c))
        else:
            # the box itself counts as matched when both sides are references;
            # the arrow is a separate element settled in compare_edges
            if isinstance(ans_c, EdgeTo):
                on_match()
                self.edge_pairs.append((subject, ref_c.target, ans_c.target))
            elif isinstance(ans_c, NullMark):
                on_match()
                self.add("WrongTarget", subject, _content_text(ref_c), "null")
            else:
                self.add(value_kind, subject, _content_text(ref_c), _content_text(ans_c))

    # --- nodes ---

    def compare_nodes(self) -> None:
        ans_index = {n.label: n for n in self.ans.nodes}
        ref_labels = set()
        for n in self.ref.nodes:
            ref_labels.add(n.label)
            subject = f"@{n.label}"
            self.ref_edge_count += sum(
                1 for row in n.rows if isinstance(row.content, EdgeTo)
            )
            a = ans_index.get(n.label)
            if a is None:
                self.add("MissingNode", subject, n.title, "(absent)")
                continue
            if a.kind != n.kind or a.title != n.title:
                self.add("WrongNodeType", subject, n.title, a.title)
                continue
            self.matched += 1
            if n.kind == "array":
                self.compare_cells(n, a)
            else:
                self.compare_fields(n, a)
        for a in self.ans.nodes:
            if a.label not in ref_labels:
                self.extras += 1
                self.add("ExtraNode", f"@{a.label}", "(absent)", a.title)

    def compare_cells(self, n, a) -> None:
        if len(n.rows) != len(a.rows):
            self.add("WrongArrayLength", f"@{n.label}", str(len(n.rows)), str(len(a.rows)))
        for row, arow in zip(n.rows, a.rows):
            subject = f"@{n.label}[{row.key}]"
            self.compare_slot(subject, row.content, arow.content, self.matched_root, "WrongCellValue")

    def compare_fields(self, n, a) -> None:
        ans_rows = {row.key: row for row in a.rows}
        ref_keys = set()
        for row in n.rows:
            ref_keys.add(row.key)
            subject = f"@{n.label}.{row.key}"
            arow = ans_rows.get(row.key)
            if arow is None:
                self.add("MissingRow", subject, _content_text(row.content), "(absent)")
                continue
            self.compare_slot(subject, row.content, arow.content, self.matched_root, "WrongPrimitiveValue")
        for arow in a.rows:
            if arow.key not in ref_keys:
                self.extras += 1
                self.add("ExtraRow", f"@{n.label}.{arow.key}", "(absent)", _content_text(arow.content))

    # --- edges and aliasing ---

    def compare_edges(self) -> None:
        consumed: set[str] = set()

        by_ref_target: dict[str, list[tuple[str, str, str]]] = {}
        for pair in self.edge_pairs:
            by_ref_target.setdefault(pair[1], []).append(pair)
        for _target, group in by_ref_target.items():
            if len(group) < 2:
                continue
            ans_targets = {p[2] for p in group}
            if len(ans_targets) > 1:
                names = ", ".join(p[0] for p in group)
                self.add("BrokenAliasing", f"({names})", SAME_AREA, DIFFERENT_AREAS)
                consumed.update(p[0] for p in group)

        by_ans_target: dict[str, list[tuple[str, str, str]]] = {}
        for pair in self.edge_pairs:
            by_ans_target.setdefault(pair[2], []).append(pair)
        for _target, group in by_ans_target.items():
            if len(group) < 2:
                continue
            ref_targets = {p[1] for p in group}
            if len(ref_targets) > 1:
                fresh = [p for p in group if p[0] not in consumed]
                if not fresh:
                    continue
                names = ", ".join(p[0] for p in group)
                self.add("BrokenAliasing", f"({names})", DIFFERENT_AREAS, SAME_AREA)
                consumed.update(p[0] for p in group)

        for anchor, ref_target, ans_target in self.edge_pairs:
            if ref_target == ans_target:
                self.matched += 1
            elif anchor not in consumed:
                self.add("WrongTarget", anchor, f"@{ref_target}", f"@{ans_target}")


def compare(reference: Diagram, answer: Diagram) -> FeedbackReport:
    """Grade `answer` against `reference`; both may use any heap labels."""
    return _Comparison(canonicalize(reference), canonicalize(answer)).run()


def report_to_json(report: FeedbackReport) -> dict:
    return {
        "equivalent": report.equivalent,
        "score": report.score,
        "discrepancies": [
            {"kind": d.kind, "subject": d.subject, "expected": d.expected, "actual": d.actual}
            for d in report.discrepancies
        ],
        "messages": list(report.messages),
    }
