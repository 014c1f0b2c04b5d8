"""AST node classes for MiniJava-VPS.

Every statement and expression carries its 1-based source position so trace
events and error messages can point back into the source. The validator
annotates expression nodes in place (``static_type`` and name-resolution
hints) and marks the program checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class TypeRef:
    """A declared type as written: base name plus optional [] suffix."""

    name: str
    is_array: bool
    line: int
    column: int

    def text(self) -> str:
        return self.name + ("[]" if self.is_array else "")


@dataclass
class Node:
    line: int
    column: int


# --- expressions ---


@dataclass
class Expr(Node):
    static_type: object = field(default=None, init=False, repr=False, compare=False)


@dataclass
class IntLit(Expr):
    value: int


@dataclass
class DoubleLit(Expr):
    value: float


@dataclass
class BoolLit(Expr):
    value: bool


@dataclass
class CharLit(Expr):
    value: str


@dataclass
class StringLit(Expr):
    value: str


@dataclass
class NullLit(Expr):
    pass


@dataclass
class Var(Expr):
    name: str
    # validator fills in: "local" | "field" (implicit this.field) | "this"
    resolution: str = field(default="", init=False, repr=False, compare=False)


@dataclass
class FieldAccess(Expr):
    obj: Expr
    field_name: str


@dataclass
class IndexAccess(Expr):
    array: Expr
    index: Expr


@dataclass
class MethodCall(Expr):
    obj: Expr
    name: str
    args: list[Expr]
    owner: str = field(default="", init=False, repr=False, compare=False)


@dataclass
class NewObject(Expr):
    class_name: str
    args: list[Expr]


@dataclass
class NewArray(Expr):
    elem_type: TypeRef
    length: Expr


@dataclass
class Unary(Expr):
    op: str
    operand: Expr


@dataclass
class Binary(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass
class Println(Expr):
    arg: Expr


# --- statements ---


@dataclass
class Stmt(Node):
    pass


@dataclass
class VarDecl(Stmt):
    type_ref: TypeRef
    name: str
    init: Expr | None


@dataclass
class Assign(Stmt):
    target: Expr
    value: Expr


@dataclass
class ExprStmt(Stmt):
    expr: Expr


@dataclass
class If(Stmt):
    cond: Expr
    then_body: list[Stmt]
    else_body: list[Stmt] | None


@dataclass
class While(Stmt):
    cond: Expr
    body: list[Stmt]


@dataclass
class Return(Stmt):
    value: Expr | None


# --- declarations ---


@dataclass
class FieldDecl:
    type_ref: TypeRef
    name: str
    line: int
    column: int


@dataclass
class Param:
    type_ref: TypeRef
    name: str
    line: int
    column: int


@dataclass
class CtorDecl:
    params: list[Param]
    body: list[Stmt]
    line: int
    column: int
    synthesized: bool = False


@dataclass
class MethodDecl:
    name: str
    params: list[Param]
    return_type: TypeRef | None  # None means void
    body: list[Stmt]
    line: int
    column: int


@dataclass
class ClassDecl:
    name: str
    fields: list[FieldDecl]
    constructor: CtorDecl
    methods: list[MethodDecl]
    line: int
    column: int


@dataclass
class MainDecl:
    class_name: str
    param: str
    body: list[Stmt]
    line: int
    column: int
    end_line: int


@dataclass
class Program:
    classes: list[ClassDecl]
    mains: list[MainDecl]
    checked: bool = field(default=False, compare=False)

    @property
    def main_class(self) -> str | None:
        return self.mains[0].class_name if self.mains else None

    @property
    def main_body(self) -> list[Stmt]:
        return self.mains[0].body if self.mains else []

    @property
    def main_param(self) -> str:
        return self.mains[0].param if self.mains else "args"

    @property
    def main_end_line(self) -> int:
        return self.mains[0].end_line if self.mains else 1

    def class_named(self, name: str) -> ClassDecl | None:
        for c in self.classes:
            if c.name == name:
                return c
        return None
