"""MiniJava-VPS front end: lexer, parser, validator, printer."""

from .astjson import ast_to_dict
from .errors import LexError, ParseError, ValidationError, ValidationFailure
from .lexer import tokenize
from .parser import parse_program
from .printer import expr_text, pretty_print
from .tokens import Token
from .validator import check, validate

__all__ = [
    "LexError",
    "ParseError",
    "Token",
    "ValidationError",
    "ValidationFailure",
    "ast_to_dict",
    "check",
    "expr_text",
    "parse_program",
    "pretty_print",
    "tokenize",
    "validate",
]
