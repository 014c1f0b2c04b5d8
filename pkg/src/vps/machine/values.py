"""Runtime values of the notional machine.

Ints are 32-bit two's complement (arithmetic wraps), doubles are binary64,
strings are immutable inline values (never heap nodes), and references name
heap memory areas by their allocation-order id.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..lang.lexer import escape_text


@dataclass(frozen=True)
class Value:
    pass


@dataclass(frozen=True)
class IntV(Value):
    v: int


@dataclass(frozen=True)
class DoubleV(Value):
    v: float


@dataclass(frozen=True)
class BoolV(Value):
    v: bool


@dataclass(frozen=True)
class CharV(Value):
    v: str


@dataclass(frozen=True)
class StrV(Value):
    v: str


@dataclass(frozen=True)
class NullV(Value):
    pass


@dataclass(frozen=True)
class RefV(Value):
    heap_id: int


_U32 = 2**32
_I32_MIN = -(2**31)


def wrap32(x: int) -> int:
    """Reduce to 32-bit two's complement."""
    return (x - _I32_MIN) % _U32 + _I32_MIN


def int_div(a: int, b: int) -> int:
    """Truncating division (Python's // floors; Java truncates toward zero)."""
    q = abs(a) // abs(b)
    if (a < 0) != (b < 0):
        q = -q
    return wrap32(q)


def int_mod(a: int, b: int) -> int:
    """Remainder with the dividend's sign."""
    r = abs(a) % abs(b)
    if a < 0:
        r = -r
    return wrap32(r)


def double_div(a: float, b: float) -> float:
    if b != 0.0:
        return a / b
    if a == 0.0 or math.isnan(a):
        return math.nan
    sign = math.copysign(1.0, a) * math.copysign(1.0, b)
    return math.inf * sign


def double_mod(a: float, b: float) -> float:
    if b == 0.0 or math.isnan(a) or math.isnan(b) or math.isinf(a):
        return math.nan
    return math.fmod(a, b)


def _double_text(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return repr(x)


def render_plain(value: Value) -> str:
    """Text for println output and string concatenation."""
    if isinstance(value, IntV):
        return str(value.v)
    if isinstance(value, DoubleV):
        return _double_text(value.v)
    if isinstance(value, BoolV):
        return "true" if value.v else "false"
    if isinstance(value, CharV):
        return value.v
    if isinstance(value, StrV):
        return value.v
    if isinstance(value, NullV):
        return "null"
    if isinstance(value, RefV):
        return f"@{value.heap_id}"
    raise AssertionError(value)  # pragma: no cover


def render_inline(value: Value) -> str:
    """Literal text used in diagrams, VPS-D, and feedback messages."""
    if isinstance(value, CharV):
        return escape_text(value.v, "'")
    if isinstance(value, StrV):
        return escape_text(value.v)
    return render_plain(value)


def value_to_json(value: Value) -> dict:
    """Wire encoding; non-finite doubles become the words Java prints."""
    if isinstance(value, IntV):
        return {"t": "int", "v": value.v}
    if isinstance(value, DoubleV):
        if math.isfinite(value.v):
            return {"t": "dbl", "v": value.v}
        return {"t": "dbl", "v": _double_text(value.v)}
    if isinstance(value, BoolV):
        return {"t": "bool", "v": value.v}
    if isinstance(value, CharV):
        return {"t": "char", "v": value.v}
    if isinstance(value, StrV):
        return {"t": "str", "v": value.v}
    if isinstance(value, NullV):
        return {"t": "null"}
    if isinstance(value, RefV):
        return {"t": "ref", "id": value.heap_id}
    raise AssertionError(value)  # pragma: no cover


def value_from_json(data: object) -> Value:
    """Inverse of value_to_json; raises ValueError on malformed input."""
    if not isinstance(data, dict) or "t" not in data:
        raise ValueError("expected a value object with a 't' tag")
    tag = data["t"]
    if tag == "null":
        return NullV()
    if tag == "ref":
        if not isinstance(data.get("id"), int):
            raise ValueError("ref value needs an integer 'id'")
        return RefV(data["id"])
    if "v" not in data:
        raise ValueError(f"value of type '{tag}' needs a 'v' field")
    v = data["v"]
    if tag == "int":
        if not isinstance(v, int) or isinstance(v, bool):
            raise ValueError("int value must be an integer")
        return IntV(v)
    if tag == "dbl":
        if isinstance(v, str):
            words = {"NaN": math.nan, "Infinity": math.inf, "-Infinity": -math.inf}
            if v not in words:
                raise ValueError(f"bad double word {v!r}")
            return DoubleV(words[v])
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise ValueError("double value must be a number")
        return DoubleV(float(v))
    if tag == "bool":
        if not isinstance(v, bool):
            raise ValueError("bool value must be true or false")
        return BoolV(v)
    if tag == "char":
        if not isinstance(v, str) or len(v) != 1:
            raise ValueError("char value must be a 1-character string")
        return CharV(v)
    if tag == "str":
        if not isinstance(v, str):
            raise ValueError("str value must be a string")
        return StrV(v)
    raise ValueError(f"unknown value tag {tag!r}")
