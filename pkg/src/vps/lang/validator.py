"""Name/type checking for parsed programs.

All findings are collected (no first-error abort). On success every
expression node carries its static type, `Var` nodes know whether they name
a local, the receiver, or an implicit field of the receiver, and method
calls know their owning class.
"""

from __future__ import annotations

from .errors import ValidationError, ValidationFailure
from .nodes import (
    Assign,
    Binary,
    BoolLit,
    CharLit,
    ClassDecl,
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
    TypeRef,
    Unary,
    Var,
    VarDecl,
    While,
)
from .types import (
    ArrayType,
    BOOL,
    CHAR,
    ClassType,
    DOUBLE,
    INT,
    NULL,
    NUMERIC,
    PRIMITIVES,
    STRING,
    Type,
    VOID,
    array_of,
    assignable,
    is_reference,
)

INT_MAX = 2**31 - 1
INT_MIN = -(2**31)

_CONCATABLE = (INT, DOUBLE, BOOL, CHAR, STRING)


class _Checker:
    def __init__(self, program: Program):
        self.program = program
        self.errors: list[ValidationError] = []
        self.class_table: dict[str, ClassDecl] = {}
        # body-walk context
        self.current_class: ClassDecl | None = None
        self.return_type: Type | None = None  # None: no value allowed
        self.scopes: list[dict[str, Type]] = []

    def err(self, message: str, line: int, column: int) -> None:
        self.errors.append(ValidationError(message, line, column))

    def run(self) -> list[ValidationError]:
        self._collect_classes()
        self._check_signatures()
        self._check_main_count()
        for cls in self.program.classes:
            self._check_class_bodies(cls)
        if self.program.mains:
            main = self.program.mains[0]
            self.current_class = None
            self.return_type = None
            self.scopes = [{}]
            self._stmts(main.body)
        return self.errors

    # --- declaration-level checks ---

    def _collect_classes(self) -> None:
        for cls in self.program.classes:
            if cls.name in self.class_table:
                self.err(f"duplicate class '{cls.name}'", cls.line, cls.column)
            else:
                self.class_table[cls.name] = cls

    def _resolve(self, tref: TypeRef) -> Type | None:
        if tref.name in PRIMITIVES:
            base: Type = PRIMITIVES[tref.name]
        elif tref.name in self.class_table:
            base = ClassType(tref.name)
        else:
            self.err(f"unknown type '{tref.name}'", tref.line, tref.column)
            return None
        return array_of(base) if tref.is_array else base

    def _check_signatures(self) -> None:
        for cls in self.program.classes:
            seen_fields: set[str] = set()
            for f in cls.fields:
                if f.name in seen_fields:
                    self.err(f"duplicate field '{f.name}' in class '{cls.name}'", f.line, f.column)
                seen_fields.add(f.name)
                if f.name == "this":
                    self.err("'this' is a reserved name", f.line, f.column)
                self._resolve(f.type_ref)
            self._check_params(cls.constructor.params)
            seen_methods: set[str] = set()
            for m in cls.methods:
                if m.name in seen_methods:
                    self.err(f"duplicate method '{m.name}' in class '{cls.name}'", m.line, m.column)
                seen_methods.add(m.name)
                if m.return_type is not None:
                    self._resolve(m.return_type)
                self._check_params(m.params)

    def _check_params(self, params) -> None:
        seen: set[str] = set()
        for p in params:
            if p.name in seen:
                self.err(f"duplicate parameter '{p.name}'", p.line, p.column)
            seen.add(p.name)
            if p.name == "this":
                self.err("'this' is a reserved name", p.line, p.column)
            self._resolve(p.type_ref)

    def _check_main_count(self) -> None:
        mains = self.program.mains
        if not mains:
            self.err("missing main: no 'public static void main(String[] args)' found", 1, 1)
        for extra in mains[1:]:
            self.err(
                f"duplicate main in class '{extra.class_name}'", extra.line, extra.column
            )

    def _check_class_bodies(self, cls: ClassDecl) -> None:
        ctor = cls.constructor
        self.current_class = cls
        self.return_type = None
        self.scopes = [{}]
        for p in ctor.params:
            t = self._resolve(p.type_ref)
            if t is not None:
                self.scopes[0][p.name] = t
        self._stmts(ctor.body)

        for m in cls.methods:
            self.current_class = cls
            ret = self._resolve(m.return_type) if m.return_type is not None else None
            self.return_type = ret
            self.scopes = [{}]
            for p in m.params:
                t = self._resolve(p.type_ref)
                if t is not None:
                    self.scopes[0][p.name] = t
            self._stmts(m.body)
            if ret is not None and not (m.body and isinstance(m.body[-1], Return)):
                self.err(
                    f"method '{m.name}' must end with a return statement", m.line, m.column
                )
        self.current_class = None

    # --- statements ---

    def _stmts(self, body: list[Stmt]) -> None:
        self.scopes.append({})
        for stmt in body:
            self._stmt(stmt)
        self.scopes.pop()

    def _lookup(self, name: str) -> Type | None:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None

    def _field_of(self, cls: ClassDecl, name: str):
        for f in cls.fields:
            if f.name == name:
                return f
        return None

    def _stmt(self, stmt: Stmt) -> None:
        if isinstance(stmt, VarDecl):
            declared = self._resolve(stmt.type_ref)
            if stmt.name == "this":
                self.err("'this' is a reserved name", stmt.line, stmt.column)
            elif self._lookup(stmt.name) is not None:
                self.err(f"duplicate variable '{stmt.name}'", stmt.line, stmt.column)
            if stmt.init is not None:
                actual = self._expr(stmt.init)
                if declared is not None and actual is not None and not assignable(declared, actual):
                    self.err(
                        f"type mismatch: cannot assign {actual.text()} to "
                        f"{declared.text()} '{stmt.name}'",
                        stmt.line,
                        stmt.column,
                    )
            if declared is not None:
                self.scopes[-1][stmt.name] = declared
        elif isinstance(stmt, Assign):
            target = self._expr(stmt.target, as_target=True)
            value = self._expr(stmt.value)
            if target is not None and value is not None and not assignable(target, value):
                self.err(
                    f"type mismatch: cannot assign {value.text()} to {target.text()}",
                    stmt.line,
                    stmt.column,
                )
        elif isinstance(stmt, ExprStmt):
            if not isinstance(stmt.expr, (MethodCall, Println, NewObject)):
                self.err("not a statement", stmt.line, stmt.column)
            else:
                self._expr(stmt.expr)
        elif isinstance(stmt, If):
            cond = self._expr(stmt.cond)
            if cond is not None and cond != BOOL:
                self.err(
                    f"type mismatch: if condition must be boolean, got {cond.text()}",
                    stmt.line,
                    stmt.column,
                )
            self._stmts(stmt.then_body)
            if stmt.else_body is not None:
                self._stmts(stmt.else_body)
        elif isinstance(stmt, While):
            cond = self._expr(stmt.cond)
            if cond is not None and cond != BOOL:
                self.err(
                    f"type mismatch: while condition must be boolean, got {cond.text()}",
                    stmt.line,
                    stmt.column,
                )
            self._stmts(stmt.body)
        elif isinstance(stmt, Return):
            if self.return_type is None:
                if stmt.value is not None:
                    self.err(
                        "type mismatch: cannot return a value here", stmt.line, stmt.column
                    )
            else:
                if stmt.value is None:
                    self.err(
                        f"type mismatch: must return a {self.return_type.text()}",
                        stmt.line,
                        stmt.column,
                    )
                else:
                    actual = self._expr(stmt.value)
                    if actual is not None and not assignable(self.return_type, actual):
                        self.err(
                            f"type mismatch: cannot return {actual.text()} as "
                            f"{self.return_type.text()}",
                            stmt.line,
                            stmt.column,
                        )
        else:  # pragma: no cover - parser produces no other statements
            raise AssertionError(f"unexpected statement {stmt!r}")

    # --- expressions ---

    def _expr(self, expr: Expr, as_target: bool = False) -> Type | None:
        t = self._expr_inner(expr, as_target)
        expr.static_type = t
        return t

    def _expr_inner(self, expr: Expr, as_target: bool) -> Type | None:
        if isinstance(expr, IntLit):
            if expr.value > INT_MAX:
                self.err(f"int literal out of range: {expr.value}", expr.line, expr.column)
                return None
            return INT
        if isinstance(expr, DoubleLit):
            return DOUBLE
        if isinstance(expr, BoolLit):
            return BOOL
        if isinstance(expr, CharLit):
            return CHAR
        if isinstance(expr, StringLit):
            return STRING
        if isinstance(expr, NullLit):
            return NULL
        if isinstance(expr, Var):
            return self._var(expr, as_target)
        if isinstance(expr, FieldAccess):
            return self._field_access(expr, as_target)
        if isinstance(expr, IndexAccess):
            arr = self._expr(expr.array)
            idx = self._expr(expr.index)
            if idx is not None and idx != INT:
                self.err(
                    f"type mismatch: array index must be int, got {idx.text()}",
                    expr.line,
                    expr.column,
                )
            if arr is None:
                return None
            if not isinstance(arr, ArrayType):
                self.err(
                    f"type mismatch: cannot index value of type {arr.text()}",
                    expr.line,
                    expr.column,
                )
                return None
            return arr.elem
        if isinstance(expr, MethodCall):
            return self._call(expr)
        if isinstance(expr, NewObject):
            return self._new_object(expr)
        if isinstance(expr, NewArray):
            elem = self._resolve(expr.elem_type)
            length = self._expr(expr.length)
            if length is not None and length != INT:
                self.err(
                    f"type mismatch: array length must be int, got {length.text()}",
                    expr.line,
                    expr.column,
                )
            return array_of(elem) if elem is not None else None
        if isinstance(expr, Unary):
            return self._unary(expr)
        if isinstance(expr, Binary):
            return self._binary(expr)
        if isinstance(expr, Println):
            arg = self._expr(expr.arg)
            if arg == VOID:
                self.err("type mismatch: cannot print a void value", expr.line, expr.column)
            return VOID
        raise AssertionError(f"unexpected expression {expr!r}")  # pragma: no cover

    def _var(self, expr: Var, as_target: bool) -> Type | None:
        if expr.name == "this":
            if self.current_class is None:
                self.err("unknown variable 'this' (only valid inside a class)", expr.line, expr.column)
                return None
            if as_target:
                self.err("cannot assign to 'this'", expr.line, expr.column)
            expr.resolution = "this"
            return ClassType(self.current_class.name)
        local = self._lookup(expr.name)
        if local is not None:
            expr.resolution = "local"
            return local
        if self.current_class is not None:
            f = self._field_of(self.current_class, expr.name)
            if f is not None:
                expr.resolution = "field"
                return self._resolve(f.type_ref)
        self.err(f"unknown variable '{expr.name}'", expr.line, expr.column)
        return None

    def _field_access(self, expr: FieldAccess, as_target: bool) -> Type | None:
        obj = self._expr(expr.obj)
        if obj is None:
            return None
        if isinstance(obj, ArrayType):
            if expr.field_name == "length":
                if as_target:
                    self.err("cannot assign to array length", expr.line, expr.column)
                return INT
            self.err(
                f"unknown field '{expr.field_name}' on {obj.text()}", expr.line, expr.column
            )
            return None
        if isinstance(obj, ClassType):
            cls = self.class_table.get(obj.name)
            f = self._field_of(cls, expr.field_name) if cls is not None else None
            if f is None:
                self.err(
                    f"unknown field '{expr.field_name}' in class '{obj.name}'",
                    expr.line,
                    expr.column,
                )
                return None
            return self._resolve(f.type_ref)
        self.err(
            f"type mismatch: cannot access field '{expr.field_name}' on {obj.text()}",
            expr.line,
            expr.column,
        )
        return None

    def _call(self, expr: MethodCall) -> Type | None:
        obj = self._expr(expr.obj)
        arg_types = [self._expr(a) for a in expr.args]
        if obj is None:
            return None
        if not isinstance(obj, ClassType):
            self.err(
                f"type mismatch: cannot call a method on {obj.text()}", expr.line, expr.column
            )
            return None
        cls = self.class_table.get(obj.name)
        method = None
        if cls is not None:
            for m in cls.methods:
                if m.name == expr.name:
                    method = m
                    break
        if method is None:
            self.err(
                f"unknown method '{expr.name}' in class '{obj.name}'", expr.line, expr.column
            )
            return None
        expr.owner = obj.name
        self._check_args(f"method '{expr.name}'", method.params, arg_types, expr)
        if method.return_type is None:
            return VOID
        return self._resolve(method.return_type)

    def _new_object(self, expr: NewObject) -> Type | None:
        arg_types = [self._expr(a) for a in expr.args]
        cls = self.class_table.get(expr.class_name)
        if cls is None:
            self.err(f"unknown type '{expr.class_name}'", expr.line, expr.column)
            return None
        self._check_args(
            f"constructor of '{expr.class_name}'", cls.constructor.params, arg_types, expr
        )
        return ClassType(expr.class_name)

    def _check_args(self, what: str, params, arg_types, at) -> None:
        if len(params) != len(arg_types):
            self.err(
                f"arity mismatch: {what} expects {len(params)} argument(s), got {len(arg_types)}",
                at.line,
                at.column,
            )
            return
        for p, actual in zip(params, arg_types):
            declared = self._resolve(p.type_ref)
            if declared is not None and actual is not None and not assignable(declared, actual):
                self.err(
                    f"type mismatch: cannot pass {actual.text()} as "
                    f"{declared.text()} '{p.name}'",
                    at.line,
                    at.column,
                )

    def _unary(self, expr: Unary) -> Type | None:
        if expr.op == "-" and isinstance(expr.operand, IntLit):
            # -2147483648 is valid even though 2147483648 alone is not
            if expr.operand.value > 2**31:
                self.err(
                    f"int literal out of range: -{expr.operand.value}", expr.line, expr.column
                )
                return None
            expr.operand.static_type = INT
            return INT
        operand = self._expr(expr.operand)
        if operand is None:
            return None
        if expr.op == "-":
            if operand not in NUMERIC:
                self.err(
                    f"type mismatch: cannot negate {operand.text()}", expr.line, expr.column
                )
                return None
            return operand
        if operand != BOOL:
            self.err(f"type mismatch: '!' needs a boolean, got {operand.text()}", expr.line, expr.column)
            return None
        return BOOL

    def _binary(self, expr: Binary) -> Type | None:
        left = self._expr(expr.left)
        right = self._expr(expr.right)
        if left is None or right is None:
            return None
        op = expr.op
        if op in ("&&", "||"):
            if left != BOOL or right != BOOL:
                self.err(
                    f"type mismatch: '{op}' needs booleans, got {left.text()} and {right.text()}",
                    expr.line,
                    expr.column,
                )
                return None
            return BOOL
        if op in ("==", "!="):
            ok = (
                (left in NUMERIC and right in NUMERIC)
                or left == right
                or (left == NULL and (is_reference(right) or right == NULL))
                or (right == NULL and is_reference(left))
            )
            if not ok:
                self.err(
                    f"type mismatch: cannot compare {left.text()} with {right.text()}",
                    expr.line,
                    expr.column,
                )
                return None
            return BOOL
        if op in ("<", "<=", ">", ">="):
            if left not in NUMERIC or right not in NUMERIC:
                self.err(
                    f"type mismatch: '{op}' needs numbers, got {left.text()} and {right.text()}",
                    expr.line,
                    expr.column,
                )
                return None
            return BOOL
        if op == "+" and (left == STRING or right == STRING):
            if left in _CONCATABLE and right in _CONCATABLE:
                return STRING
            self.err(
                f"type mismatch: cannot concatenate {left.text()} and {right.text()}",
                expr.line,
                expr.column,
            )
            return None
        if left in NUMERIC and right in NUMERIC:
            return DOUBLE if DOUBLE in (left, right) else INT
        self.err(
            f"type mismatch: '{op}' needs numbers, got {left.text()} and {right.text()}",
            expr.line,
            expr.column,
        )
        return None


def check(program: Program) -> list[ValidationError]:
    """Collect every validation error in a deterministic order."""
    return _Checker(program).run()


def validate(program: Program) -> Program:
    """Check the program; raise ValidationFailure with all errors, or mark it checked."""
    errors = check(program)
    if errors:
        raise ValidationFailure(errors)
    program.checked = True
    return program
