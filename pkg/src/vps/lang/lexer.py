"""Hand-rolled lexer for MiniJava-VPS source text."""

from __future__ import annotations

from .errors import LexError
from .tokens import (
    CHAR_LIT,
    DOUBLE_LIT,
    IDENT,
    INT_LIT,
    KEYWORD,
    KEYWORDS,
    ONE_CHAR_OPS,
    OP,
    PUNCT,
    PUNCT_CHARS,
    STRING_LIT,
    TWO_CHAR_OPS,
    Token,
)

_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "\\": "\\", "'": "'", '"': '"', "0": "\0"}
_UNESCAPES = {"\n": "\\n", "\t": "\\t", "\r": "\\r", "\\": "\\\\", '"': '\\"', "\0": "\\0"}


def tokenize(source: str) -> list[Token]:
    """Split source into tokens; comments and whitespace are skipped."""
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(source)

    def err(message: str, at_line: int, at_col: int) -> LexError:
        return LexError(message, at_line, at_col)

    while i < n:
        c = source[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "/" and i + 1 < n and source[i + 1] == "/":
            while i < n and source[i] != "\n":
                i += 1
                col += 1
            continue
        if c == "/" and i + 1 < n and source[i + 1] == "*":
            start_line, start_col = line, col
            i += 2
            col += 2
            while True:
                if i >= n:
                    raise err("unterminated block comment", start_line, start_col)
                if source[i] == "*" and i + 1 < n and source[i + 1] == "/":
                    i += 2
                    col += 2
                    break
                if source[i] == "\n":
                    line += 1
                    col = 1
                else:
                    col += 1
                i += 1
            continue

        start_line, start_col = line, col

        if c.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            kind = INT_LIT
            if j < n - 1 and source[j] == "." and source[j + 1].isdigit():
                j += 1
                while j < n and source[j].isdigit():
                    j += 1
                kind = DOUBLE_LIT
            lexeme = source[i:j]
            tokens.append(Token(kind, lexeme, start_line, start_col))
            col += j - i
            i = j
            continue

        if c.isalpha() or c == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            lexeme = source[i:j]
            kind = KEYWORD if lexeme in KEYWORDS else IDENT
            tokens.append(Token(kind, lexeme, start_line, start_col))
            col += j - i
            i = j
            continue

        if c == '"':
            j = i + 1
            while True:
                if j >= n or source[j] == "\n":
                    raise err("unterminated string literal", start_line, start_col)
                if source[j] == "\\":
                    if j + 1 >= n or source[j + 1] not in _ESCAPES:
                        raise err("bad escape sequence in string literal", start_line, start_col)
                    j += 2
                    continue
                if source[j] == '"':
                    j += 1
                    break
                j += 1
            lexeme = source[i:j]
            tokens.append(Token(STRING_LIT, lexeme, start_line, start_col))
            col += j - i
            i = j
            continue

        if c == "'":
            j = i + 1
            if j < n and source[j] == "\\":
                if j + 1 >= n or source[j + 1] not in _ESCAPES:
                    raise err("bad escape sequence in char literal", start_line, start_col)
                j += 2
            elif j < n and source[j] not in ("'", "\n"):
                j += 1
            if j >= n or source[j] != "'":
                raise err("unterminated char literal", start_line, start_col)
            j += 1
            lexeme = source[i:j]
            tokens.append(Token(CHAR_LIT, lexeme, start_line, start_col))
            col += j - i
            i = j
            continue

        two = source[i : i + 2]
        if two in TWO_CHAR_OPS:
            tokens.append(Token(OP, two, start_line, start_col))
            i += 2
            col += 2
            continue
        if c in ONE_CHAR_OPS:
            tokens.append(Token(OP, c, start_line, start_col))
            i += 1
            col += 1
            continue
        if c in PUNCT_CHARS:
            tokens.append(Token(PUNCT, c, start_line, start_col))
            i += 1
            col += 1
            continue

        raise err(f"illegal character {c!r}", start_line, start_col)

    return tokens


def unescape_text(lexeme: str) -> str:
    """Decode a quoted string/char lexeme (quotes included) to its value."""
    body = lexeme[1:-1]
    out: list[str] = []
    i = 0
    while i < len(body):
        if body[i] == "\\":
            out.append(_ESCAPES[body[i + 1]])
            i += 2
        else:
            out.append(body[i])
            i += 1
    return "".join(out)


def escape_text(value: str, quote: str = '"') -> str:
    """Encode a value back to quoted literal form (inverse of unescape_text)."""
    out = [quote]
    for ch in value:
        if ch == quote:
            out.append("\\" + quote)
        elif ch == "\\":
            out.append("\\\\")
        elif ch in ("\n", "\t", "\r", "\0"):
            out.append(_UNESCAPES[ch])
        else:
            out.append(ch)
    out.append(quote)
    return "".join(out)
