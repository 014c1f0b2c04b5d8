import pytest

from helpers import corpus_source
from vps import ValidationFailure, check, parse_program, validate


def wrap_main(body: str) -> str:
    return f"class M {{ public static void main(String[] args) {{ {body} }} }}"


PERSON = """class Person {
    public String rut;
    public int edad;

    Person(String rut, int edad) {
        this.rut = rut;
        this.edad = edad;
    }
}
"""


def errors_of(source: str):
    return check(parse_program(source))


@pytest.mark.parametrize(
    "name",
    [
        "array_aliasing.mjv",
        "person_aliasing.mjv",
        "person_array.mjv",
        "friends_pair.mjv",
        "while_fill.mjv",
        "person_methods.mjv",
        "null_deref.mjv",
        "index_oob.mjv",
        "div_zero.mjv",
        "infinite_loop.mjv",
    ],
)
def test_corpus_validates_clean(name):
    assert errors_of(corpus_source(name)) == []


def test_unknown_type():
    errs = errors_of(wrap_main("Persona p = null;"))
    assert len(errs) == 1
    assert "unknown type" in errs[0].message


def test_unknown_field():
    source = PERSON + wrap_main('Person ref_p = new Person("234", 56); int a = ref_p.age;')
    errs = errors_of(source)
    assert len(errs) == 1
    assert "unknown field" in errs[0].message and "age" in errs[0].message


def test_unknown_method_and_variable():
    errs = errors_of(PERSON + wrap_main('Person p = new Person("1", 2); p.volar();'))
    assert any("unknown method" in e.message for e in errs)
    errs = errors_of(wrap_main("int x = y;"))
    assert any("unknown variable" in e.message for e in errs)


def test_arity_mismatch():
    errs = errors_of(PERSON + wrap_main('Person p = new Person("1");'))
    assert len(errs) == 1
    assert "arity mismatch" in errs[0].message


def test_type_mismatch():
    errs = errors_of(wrap_main('int x = "hola";'))
    assert len(errs) == 1
    assert "type mismatch" in errs[0].message


def test_missing_main():
    errs = errors_of("class A { public int x; }")
    assert any("missing main" in e.message for e in errs)


def test_duplicate_main():
    source = (
        "class A { public static void main(String[] a) {} }\n"
        "class B { public static void main(String[] b) {} }\n"
    )
    errs = errors_of(source)
    assert any("duplicate main" in e.message for e in errs)


def test_int_literal_range():
    assert errors_of(wrap_main("int x = 2147483647;")) == []
    assert errors_of(wrap_main("int x = -2147483648;")) == []
    assert any("out of range" in e.message for e in errors_of(wrap_main("int x = 2147483648;")))
    assert any("out of range" in e.message for e in errors_of(wrap_main("int x = -2147483649;")))


def test_null_only_assignable_to_references():
    assert any("type mismatch" in e.message for e in errors_of(wrap_main("String s = null;")))
    assert any("type mismatch" in e.message for e in errors_of(wrap_main("int x = null;")))
    assert errors_of(PERSON + wrap_main("Person p = null;")) == []
    assert errors_of(wrap_main("int[] a = null;")) == []


def test_widening_but_no_narrowing():
    assert errors_of(wrap_main("double d = 5;")) == []
    assert any("type mismatch" in e.message for e in errors_of(wrap_main("int x = 5.0;")))


def test_condition_must_be_boolean():
    assert any("must be boolean" in e.message for e in errors_of(wrap_main("if (1) { }")))
    assert any("must be boolean" in e.message for e in errors_of(wrap_main("while (2.5) { }")))


def test_expression_statement_restriction():
    errs = errors_of(wrap_main("1 + 2;"))
    assert any("not a statement" in e.message for e in errs)


def test_duplicates():
    assert any("duplicate variable" in e.message for e in errors_of(wrap_main("int x = 1; int x = 2;")))
    assert any(
        "duplicate field" in e.message
        for e in errors_of("class A { public int x; public int x; } " + wrap_main(""))
    )
    assert any(
        "duplicate method" in e.message
        for e in errors_of(
            "class A { public int f() { return 1; } public int f() { return 2; } } " + wrap_main("")
        )
    )
    assert any(
        "duplicate parameter" in e.message
        for e in errors_of("class A { public int f(int a, int a) { return a; } } " + wrap_main(""))
    )


def test_block_scoping_allows_redeclare_after_block():
    source = wrap_main("if (true) { int x = 1; } int x = 2;")
    assert errors_of(source) == []


def test_non_void_method_must_end_with_return():
    source = "class A { public int f() { int x = 1; } } " + wrap_main("")
    assert any("must end with a return" in e.message for e in errors_of(source))


def test_return_value_rules():
    assert any(
        "cannot return a value" in e.message
        for e in errors_of("class A { public void f() { return 1; } } " + wrap_main(""))
    )
    assert any(
        "cannot return a value" in e.message for e in errors_of(wrap_main("return 5;"))
    )
    assert errors_of(wrap_main("return;")) == []


def test_this_and_length_restrictions():
    assert any("cannot assign to 'this'" in e.message
               for e in errors_of(PERSON.replace("this.rut = rut;", "this = null;") + wrap_main("")))
    assert any("cannot assign to array length" in e.message
               for e in errors_of(wrap_main("int[] a = new int[2]; a.length = 5;")))
    assert errors_of(wrap_main("int[] a = new int[2]; int n = a.length;")) == []


def test_string_concat_rules():
    assert errors_of(wrap_main('String s = "v=" + 5;')) == []
    assert errors_of(wrap_main('String s = 5.0 + "x";')) == []
    errs = errors_of(PERSON + wrap_main('Person p = null; String s = "x" + p;'))
    assert any("concatenate" in e.message for e in errs)


def test_equality_categories():
    assert errors_of(wrap_main("boolean b = 1 == 2.0;")) == []
    assert errors_of(wrap_main("boolean b = 'a' == 'b';")) == []
    assert any("cannot compare" in e.message for e in errors_of(wrap_main("boolean b = 1 == true;")))
    assert errors_of(PERSON + wrap_main("Person p = null; boolean b = p == null;")) == []


def test_every_error_collected_not_just_first():
    errs = errors_of(wrap_main('int x = "a"; Persona p = null; int x = 2;'))
    assert len(errs) >= 3


def test_determinism():
    source = wrap_main('int x = "a"; Persona p = null; unknown u = 1;')
    first = [str(e) for e in errors_of(source)]
    second = [str(e) for e in errors_of(source)]
    assert first == second


def test_validate_raises_and_marks():
    program = parse_program(corpus_source("person_aliasing.mjv"))
    assert not program.checked
    validate(program)
    assert program.checked
    with pytest.raises(ValidationFailure) as err:
        validate(parse_program(wrap_main("Persona p = null;")))
    assert err.value.errors
