"""Source regeneration from the AST.

`pretty_print(parse_program(src))` re-parses to a structurally equal AST;
`expr_text` is also used by the machine to describe conditions and targets
in trace events.
"""

from __future__ import annotations

from .lexer import escape_text
from .nodes import (
    Assign,
    Binary,
    BoolLit,
    CharLit,
    ClassDecl,
    CtorDecl,
    DoubleLit,
    Expr,
    ExprStmt,
    FieldAccess,
    If,
    IndexAccess,
    IntLit,
    MethodCall,
    MethodDecl,
    NewArray,
    NewObject,
    NullLit,
    Println,
    Program,
    Return,
    Stmt,
    StringLit,
    Unary,
    Var,
    VarDecl,
    While,
)

_BIN_PREC = {
    "||": 1,
    "&&": 2,
    "==": 3,
    "!=": 3,
    "<": 4,
    "<=": 4,
    ">": 4,
    ">=": 4,
    "+": 5,
    "-": 5,
    "*": 6,
    "/": 6,
    "%": 6,
}
_UNARY_PREC = 7
_ATOM_PREC = 8


def expr_text(expr: Expr) -> str:
    """Render an expression with minimal parentheses."""
    return _expr(expr, 0)


def _expr(expr: Expr, parent_prec: int) -> str:
    if isinstance(expr, IntLit):
        return str(expr.value)
    if isinstance(expr, DoubleLit):
        return repr(expr.value)
    if isinstance(expr, BoolLit):
        return "true" if expr.value else "false"
    if isinstance(expr, CharLit):
        return escape_text(expr.value, "'")
    if isinstance(expr, StringLit):
        return escape_text(expr.value)
    if isinstance(expr, NullLit):
        return "null"
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, FieldAccess):
        return f"{_expr(expr.obj, _ATOM_PREC)}.{expr.field_name}"
    if isinstance(expr, IndexAccess):
        return f"{_expr(expr.array, _ATOM_PREC)}[{_expr(expr.index, 0)}]"
    if isinstance(expr, MethodCall):
        args = ", ".join(_expr(a, 0) for a in expr.args)
        return f"{_expr(expr.obj, _ATOM_PREC)}.{expr.name}({args})"
    if isinstance(expr, NewObject):
        args = ", ".join(_expr(a, 0) for a in expr.args)
        return f"new {expr.class_name}({args})"
    if isinstance(expr, NewArray):
        return f"new {expr.elem_type.name}[{_expr(expr.length, 0)}]"
    if isinstance(expr, Println):
        return f"System.out.println({_expr(expr.arg, 0)})"
    if isinstance(expr, Unary):
        inner = _expr(expr.operand, _UNARY_PREC)
        if isinstance(expr.operand, Unary) and expr.operand.op == expr.op:
            inner = f"({inner})"
        text = expr.op + inner
        return f"({text})" if parent_prec > _UNARY_PREC else text
    if isinstance(expr, Binary):
        prec = _BIN_PREC[expr.op]
        left = _expr(expr.left, prec)
        right = _expr(expr.right, prec + 1)  # left-associative
        text = f"{left} {expr.op} {right}"
        return f"({text})" if parent_prec > prec else text
    raise AssertionError(f"unexpected expression {expr!r}")  # pragma: no cover


def _stmt(stmt: Stmt, indent: int, out: list[str]) -> None:
    pad = "    " * indent
    if isinstance(stmt, VarDecl):
        init = f" = {_expr(stmt.init, 0)}" if stmt.init is not None else ""
        out.append(f"{pad}{stmt.type_ref.text()} {stmt.name}{init};")
    elif isinstance(stmt, Assign):
        out.append(f"{pad}{_expr(stmt.target, 0)} = {_expr(stmt.value, 0)};")
    elif isinstance(stmt, ExprStmt):
        out.append(f"{pad}{_expr(stmt.expr, 0)};")
    elif isinstance(stmt, If):
        out.append(f"{pad}if ({_expr(stmt.cond, 0)}) {{")
        for s in stmt.then_body:
            _stmt(s, indent + 1, out)
        if stmt.else_body is None:
            out.append(f"{pad}}}")
        else:
            out.append(f"{pad}}} else {{")
            for s in stmt.else_body:
                _stmt(s, indent + 1, out)
            out.append(f"{pad}}}")
    elif isinstance(stmt, While):
        out.append(f"{pad}while ({_expr(stmt.cond, 0)}) {{")
        for s in stmt.body:
            _stmt(s, indent + 1, out)
        out.append(f"{pad}}}")
    elif isinstance(stmt, Return):
        if stmt.value is None:
            out.append(f"{pad}return;")
        else:
            out.append(f"{pad}return {_expr(stmt.value, 0)};")
    else:  # pragma: no cover
        raise AssertionError(f"unexpected statement {stmt!r}")


def _params_text(params) -> str:
    return ", ".join(f"{p.type_ref.text()} {p.name}" for p in params)


def pretty_print(program: Program) -> str:
    """Regenerate compilable source text from a program AST."""
    out: list[str] = []
    for i, cls in enumerate(program.classes):
        if i:
            out.append("")
        _class(cls, program, out)
    return "\n".join(out) + "\n"


def _class(cls: ClassDecl, program: Program, out: list[str]) -> None:
    out.append(f"class {cls.name} {{")
    wrote_member = False
    for f in cls.fields:
        out.append(f"    public {f.type_ref.text()} {f.name};")
        wrote_member = True
    ctor: CtorDecl = cls.constructor
    if not ctor.synthesized:
        if wrote_member:
            out.append("")
        out.append(f"    {cls.name}({_params_text(ctor.params)}) {{")
        for s in ctor.body:
            _stmt(s, 2, out)
        out.append("    }")
        wrote_member = True
    for m in cls.methods:
        if wrote_member:
            out.append("")
        _method(m, out)
        wrote_member = True
    for main in program.mains:
        if main.class_name != cls.name:
            continue
        if wrote_member:
            out.append("")
        out.append(f"    public static void main(String[] {main.param}) {{")
        for s in main.body:
            _stmt(s, 2, out)
        out.append("    }")
        wrote_member = True
    out.append("}")


def _method(m: MethodDecl, out: list[str]) -> None:
    ret = m.return_type.text() if m.return_type is not None else "void"
    out.append(f"    public {ret} {m.name}({_params_text(m.params)}) {{")
    for s in m.body:
        _stmt(s, 2, out)
    out.append("    }")
