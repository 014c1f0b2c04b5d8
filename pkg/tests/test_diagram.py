import itertools
import random

import pytest

import gen
from helpers import load_source, ref_count, run_corpus
from vps import canonicalize, parse_program, rename, state_to_diagram, validate
from vps.diagram import CanonicalDiagram, EdgeTo, Inline, NullMark, diagram_from_json, diagram_to_json
from vps.machine import run_to_end
from vps.machine.values import IntV


def final_diagram(name: str):
    return state_to_diagram(run_corpus(name).final_state)


def diagram_of(body: str):
    program = load_source(
        f"class M {{ public static void main(String[] args) {{ {body} }} }}"
    )
    return state_to_diagram(run_to_end(program).final_state)


def test_array_alias_diagram_shape():
    d = final_diagram("array_aliasing.mjv")
    assert [r.name for r in d.roots] == ["array_enteros", "ref"]
    assert len(d.nodes) == 1
    node = d.nodes[0]
    assert node.kind == "array" and node.title == "int[]"
    assert [r.key for r in node.rows] == ["0", "1", "2", "3", "4"]
    assert all(row.content == Inline(IntV(0)) for row in node.rows)
    assert len(d.edges) == 2
    assert {target for _s, target in d.edges} == {node.label}


def test_single_primitive_diagram():
    d = diagram_of("int x = 5;")
    assert len(d.roots) == 1
    assert d.roots[0].content == Inline(IntV(5))
    assert d.nodes == () and d.edges == ()


def test_friends_diagram_structure():
    d = final_diagram("friends_pair.mjv")
    assert [r.name for r in d.roots] == ["ref_p1", "ref_p2", "a1"]
    assert len(d.nodes) == 3 and len(d.edges) == 5
    friends = next(n for n in d.nodes if n.title == "Friends")
    p1_row = next(r for r in friends.rows if r.key == "p1")
    p2_row = next(r for r in friends.rows if r.key == "p2")
    root_p1 = next(r for r in d.roots if r.name == "ref_p1")
    root_p2 = next(r for r in d.roots if r.name == "ref_p2")
    assert p1_row.content == root_p1.content
    assert p2_row.content == root_p2.content


def test_null_cells_render_as_null_marker_without_edge():
    d = final_diagram("person_array.mjv")
    arr = next(n for n in d.nodes if n.kind == "array")
    assert isinstance(arr.rows[0].content, EdgeTo)
    assert isinstance(arr.rows[1].content, NullMark)
    sources = [s for s, _t in d.edges]
    assert f"@{arr.label}[1]" not in sources


def test_all_frames_rendered_innermost_last():
    trace = run_corpus("person_aliasing.mjv")
    mid = trace.events[1].state  # inside the constructor
    d = state_to_diagram(mid)
    assert d.frames == ("main", "Person.Person")
    ctor_roots = [r.name for r in d.roots if r.frame == "Person.Person"]
    assert ctor_roots == ["this", "rut", "edad"]


def test_canonicalize_idempotent():
    d = final_diagram("friends_pair.mjv")
    c = canonicalize(d)
    assert isinstance(c, CanonicalDiagram)
    assert canonicalize(c) == c
    assert [n.label for n in c.nodes] == ["c1", "c2", "c3"]


def test_canonicalize_invariant_under_all_permutations():
    d = final_diagram("friends_pair.mjv")
    base = canonicalize(d)
    labels = [n.label for n in d.nodes]
    for perm in itertools.permutations(labels):
        mapping = dict(zip(labels, perm))
        assert canonicalize(rename(d, mapping)) == base


def test_aliasing_shape_differs_from_copy_shape():
    shared = diagram_of("int[] a = new int[2]; int[] b = a;")
    copied = diagram_of("int[] a = new int[2]; int[] b = new int[2];")
    assert canonicalize(shared) != canonicalize(copied)


def test_rename_requires_bijection():
    d = final_diagram("array_aliasing.mjv")
    with pytest.raises(ValueError):
        rename(d, {})
    with pytest.raises(ValueError):
        rename(d, {"1": "x", "2": "x"})


def test_edge_conservation_on_generated_programs():
    for seed in range(30):
        source = gen.straightline(seed)
        program = validate(parse_program(source))
        trace = run_to_end(program, source_text=source)
        state = trace.final_state
        d = state_to_diagram(state)
        assert len(d.edges) == ref_count(state), seed


def test_terminal_nodes_have_no_outgoing_edges():
    d = final_diagram("friends_pair.mjv")
    for node in d.nodes:
        has_edge_row = any(isinstance(r.content, EdgeTo) for r in node.rows)
        is_source = any(s.startswith(f"@{node.label}") for s, _t in d.edges)
        assert has_edge_row == is_source


def test_renaming_invariance_random_programs():
    rng = random.Random(42)
    for seed in range(40):
        source = gen.allocating(seed)
        program = validate(parse_program(source))
        d = state_to_diagram(run_to_end(program, source_text=source).final_state)
        labels = [n.label for n in d.nodes]
        shuffled = labels[:]
        rng.shuffle(shuffled)
        mapping = dict(zip(labels, shuffled))
        assert canonicalize(rename(d, mapping)) == canonicalize(d), seed


def test_unreachable_nodes_ordered_and_invariant():
    # both arrays become unreachable after the references move away
    d = diagram_of(
        "int[] a = new int[2]; int[] b = new int[3]; a = null; b = null; int x = 1;"
    )
    c = canonicalize(d)
    assert len(c.nodes) == 2
    # shorter signature sorts deterministically; relabeling cannot change it
    relabeled = rename(d, {"1": "2", "2": "1"})
    assert canonicalize(relabeled) == c


def test_diagram_json_round_trip():
    for name in ("friends_pair.mjv", "person_array.mjv", "array_aliasing.mjv"):
        d = final_diagram(name)
        assert diagram_from_json(diagram_to_json(d)) == d
