"""Semantic types used by the validator's annotations."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Type:
    name: str

    def text(self) -> str:
        return self.name


@dataclass(frozen=True)
class ClassType(Type):
    pass


@dataclass(frozen=True)
class ArrayType(Type):
    elem: Type

    def text(self) -> str:
        return self.elem.text() + "[]"


INT = Type("int")
DOUBLE = Type("double")
BOOL = Type("boolean")
CHAR = Type("char")
STRING = Type("String")
VOID = Type("void")
NULL = Type("null")

PRIMITIVES = {"int": INT, "double": DOUBLE, "boolean": BOOL, "char": CHAR, "String": STRING}

NUMERIC = (INT, DOUBLE)


def is_reference(t: Type) -> bool:
    """Class and array types live on the heap; String is an inline value."""
    return isinstance(t, (ClassType, ArrayType))


def array_of(elem: Type) -> ArrayType:
    return ArrayType(elem.text() + "[]", elem)


def assignable(target: Type, source: Type) -> bool:
    """May a value of `source` be stored in a slot declared `target`?"""
    if target == source:
        return True
    if target == DOUBLE and source == INT:
        return True
    if source == NULL and is_reference(target):
        return True
    return False
