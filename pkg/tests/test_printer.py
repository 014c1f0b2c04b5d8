import pytest

import gen
from helpers import corpus_source
from vps import parse_program, pretty_print, validate
from vps.lang.astjson import ast_to_dict


def round_trips(source: str) -> bool:
    first = parse_program(source)
    printed = pretty_print(first)
    second = parse_program(printed)
    return ast_to_dict(first) == ast_to_dict(second)


@pytest.mark.parametrize(
    "name",
    [
        "array_aliasing.mjv",
        "person_aliasing.mjv",
        "person_array.mjv",
        "friends_pair.mjv",
        "while_fill.mjv",
        "person_methods.mjv",
    ],
)
def test_corpus_round_trips(name):
    assert round_trips(corpus_source(name))


def test_minimal_round_trip():
    assert round_trips("class M { public static void main(String[] args) {} }")


def test_fifty_random_straightline_round_trips():
    for seed in range(50):
        assert round_trips(gen.straightline(seed)), f"seed {seed}"


def test_thirty_random_rich_round_trips():
    for seed in range(30):
        assert round_trips(gen.rich(seed)), f"seed {seed}"


def test_printed_source_revalidates():
    program = validate(parse_program(corpus_source("person_methods.mjv")))
    validate(parse_program(pretty_print(program)))


@pytest.mark.parametrize(
    "expr",
    [
        "1 + 2 * 3",
        "(1 + 2) * 3",
        "0 - (1 - 2)",
        "-(-5)",
        "-(1 + 2)",
        "1 - 2 - 3",
        "12 / 4 / 3",
        "12 / (4 / 3)",
        "true || false && true",
        "(true || false) && true",
        "!(1 < 2)",
        "1 < 2 == true",
    ],
)
def test_expression_parentheses_preserve_shape(expr):
    if "true" in expr or "<" in expr:
        body = f"boolean b = {expr};"
    else:
        body = f"int x = {expr};"
    source = f"class M {{ public static void main(String[] args) {{ {body} }} }}"
    assert round_trips(source)


def test_minimal_parens_in_output():
    source = "class M { public static void main(String[] args) { int x = 1 + 2 * 3; } }"
    printed = pretty_print(parse_program(source))
    assert "int x = 1 + 2 * 3;" in printed
    source2 = "class M { public static void main(String[] args) { int x = (1 + 2) * 3; } }"
    printed2 = pretty_print(parse_program(source2))
    assert "int x = (1 + 2) * 3;" in printed2


def test_string_escapes_round_trip():
    source = r'class M { public static void main(String[] args) { String s = "a\"b\\c\nd"; char c = '"'\\t'"'; } }'
    assert round_trips(source)
