"""Token stream definitions for the MiniJava-VPS lexer."""

from __future__ import annotations

from dataclasses import dataclass

KEYWORD = "keyword"
IDENT = "identifier"
INT_LIT = "int-literal"
DOUBLE_LIT = "double-literal"
STRING_LIT = "string-literal"
CHAR_LIT = "char-literal"
PUNCT = "punctuation"
OP = "operator"

KEYWORDS = frozenset(
    {
        "class", "public", "static", "void", "main",
        "int", "double", "boolean", "char", "String",
        "new", "null", "true", "false",
        "if", "else", "while", "return",
    }
)

TWO_CHAR_OPS = ("||", "&&", "==", "!=", "<=", ">=")
ONE_CHAR_OPS = "+-*/%<>!="
PUNCT_CHARS = ";,.(){}[]"


@dataclass(frozen=True)
class Token:
    """A lexeme with its 1-based source position (verbatim source slice)."""

    kind: str
    lexeme: str
    line: int
    column: int
