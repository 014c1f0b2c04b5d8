"""Position-free dictionary dump of the AST.

Used by the CLI's parse command and as the structural-equality surface for
round-trip tests (two parses are equal iff their dumps are equal).
"""

from __future__ import annotations

from .nodes import (
    Assign,
    Binary,
    BoolLit,
    CharLit,
    DoubleLit,
    Expr,
    ExprStmt,
    FieldAccess,
    If,
    IndexAccess,
    IntLit,
    MethodCall,
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


def ast_to_dict(program: Program) -> dict:
    return {
        "classes": [
            {
                "name": cls.name,
                "fields": [{"type": f.type_ref.text(), "name": f.name} for f in cls.fields],
                "constructor": {
                    "params": [{"type": p.type_ref.text(), "name": p.name} for p in cls.constructor.params],
                    "body": [_stmt(s) for s in cls.constructor.body],
                    "synthesized": cls.constructor.synthesized,
                },
                "methods": [
                    {
                        "name": m.name,
                        "params": [{"type": p.type_ref.text(), "name": p.name} for p in m.params],
                        "returns": m.return_type.text() if m.return_type is not None else "void",
                        "body": [_stmt(s) for s in m.body],
                    }
                    for m in cls.methods
                ],
            }
            for cls in program.classes
        ],
        "mains": [
            {"class": main.class_name, "param": main.param, "body": [_stmt(s) for s in main.body]}
            for main in program.mains
        ],
    }


def _stmt(stmt: Stmt) -> dict:
    if isinstance(stmt, VarDecl):
        return {
            "stmt": "decl",
            "type": stmt.type_ref.text(),
            "name": stmt.name,
            "init": _expr(stmt.init) if stmt.init is not None else None,
        }
    if isinstance(stmt, Assign):
        return {"stmt": "assign", "target": _expr(stmt.target), "value": _expr(stmt.value)}
    if isinstance(stmt, ExprStmt):
        return {"stmt": "expr", "expr": _expr(stmt.expr)}
    if isinstance(stmt, If):
        return {
            "stmt": "if",
            "cond": _expr(stmt.cond),
            "then": [_stmt(s) for s in stmt.then_body],
            "else": [_stmt(s) for s in stmt.else_body] if stmt.else_body is not None else None,
        }
    if isinstance(stmt, While):
        return {"stmt": "while", "cond": _expr(stmt.cond), "body": [_stmt(s) for s in stmt.body]}
    if isinstance(stmt, Return):
        return {"stmt": "return", "value": _expr(stmt.value) if stmt.value is not None else None}
    raise AssertionError(f"unexpected statement {stmt!r}")  # pragma: no cover


def _expr(expr: Expr) -> dict:
    if isinstance(expr, IntLit):
        return {"expr": "int", "value": expr.value}
    if isinstance(expr, DoubleLit):
        return {"expr": "double", "value": expr.value}
    if isinstance(expr, BoolLit):
        return {"expr": "bool", "value": expr.value}
    if isinstance(expr, CharLit):
        return {"expr": "char", "value": expr.value}
    if isinstance(expr, StringLit):
        return {"expr": "str", "value": expr.value}
    if isinstance(expr, NullLit):
        return {"expr": "null"}
    if isinstance(expr, Var):
        return {"expr": "var", "name": expr.name}
    if isinstance(expr, FieldAccess):
        return {"expr": "field", "obj": _expr(expr.obj), "name": expr.field_name}
    if isinstance(expr, IndexAccess):
        return {"expr": "index", "array": _expr(expr.array), "index": _expr(expr.index)}
    if isinstance(expr, MethodCall):
        return {
            "expr": "call",
            "obj": _expr(expr.obj),
            "name": expr.name,
            "args": [_expr(a) for a in expr.args],
        }
    if isinstance(expr, NewObject):
        return {"expr": "new", "class": expr.class_name, "args": [_expr(a) for a in expr.args]}
    if isinstance(expr, NewArray):
        return {"expr": "newarray", "elem": expr.elem_type.name, "length": _expr(expr.length)}
    if isinstance(expr, Unary):
        return {"expr": "unary", "op": expr.op, "operand": _expr(expr.operand)}
    if isinstance(expr, Binary):
        return {"expr": "binary", "op": expr.op, "left": _expr(expr.left), "right": _expr(expr.right)}
    if isinstance(expr, Println):
        return {"expr": "println", "arg": _expr(expr.arg)}
    raise AssertionError(f"unexpected expression {expr!r}")  # pragma: no cover
