"""Recursive-descent parser for MiniJava-VPS.

Grammar (informal):

    program     := classDecl+
    classDecl   := "class" IDENT "{" member* "}"
    member      := fieldDecl | ctorDecl | methodDecl | mainDecl
    fieldDecl   := "public" type IDENT ";"
    ctorDecl    := IDENT "(" params? ")" block
    methodDecl  := "public" (type | "void") IDENT "(" params? ")" block
    mainDecl    := "public" "static" "void" "main" "(" "String" "[" "]" IDENT ")" block
    stmt        := decl | assignment | exprStmt | if | while | return

Parsing aborts on the first error (no recovery); validation collects.
"""

from __future__ import annotations

from .errors import ParseError
from .lexer import tokenize, unescape_text
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
    FieldDecl,
    If,
    IndexAccess,
    IntLit,
    MainDecl,
    MethodCall,
    MethodDecl,
    NewArray,
    NewObject,
    NullLit,
    Param,
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
from .tokens import CHAR_LIT, DOUBLE_LIT, IDENT, INT_LIT, KEYWORD, OP, PUNCT, STRING_LIT, Token

_TYPE_KEYWORDS = ("int", "double", "boolean", "char", "String")


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    # --- token plumbing ---

    def _peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def _here(self) -> tuple[int, int]:
        tok = self._peek()
        if tok is not None:
            return tok.line, tok.column
        if self.tokens:
            last = self.tokens[-1]
            return last.line, last.column + len(last.lexeme)
        return 1, 1

    def _fail(self, what: str) -> ParseError:
        line, col = self._here()
        tok = self._peek()
        found = f"'{tok.lexeme}'" if tok else "end of input"
        return ParseError(f"expected {what} but found {found}", line, col)

    def _check(self, kind: str, lexeme: str | None = None, offset: int = 0) -> bool:
        tok = self._peek(offset)
        if tok is None or tok.kind != kind:
            return False
        return lexeme is None or tok.lexeme == lexeme

    def _accept(self, kind: str, lexeme: str | None = None) -> Token | None:
        if self._check(kind, lexeme):
            tok = self.tokens[self.pos]
            self.pos += 1
            return tok
        return None

    def _expect(self, kind: str, lexeme: str | None, what: str) -> Token:
        tok = self._accept(kind, lexeme)
        if tok is None:
            raise self._fail(what)
        return tok

    # --- declarations ---

    def parse_program(self) -> Program:
        classes: list[ClassDecl] = []
        mains: list[MainDecl] = []
        if self._peek() is None:
            raise self._fail("'class'")
        while self._peek() is not None:
            self._parse_class(classes, mains)
        return Program(classes=classes, mains=mains)

    def _parse_class(self, classes: list[ClassDecl], mains: list[MainDecl]) -> None:
        kw = self._expect(KEYWORD, "class", "'class'")
        name_tok = self._expect(IDENT, None, "class name")
        self._expect(PUNCT, "{", "'{'")
        fields: list[FieldDecl] = []
        ctor: CtorDecl | None = None
        methods: list[MethodDecl] = []
        while not self._check(PUNCT, "}"):
            ctor = self._parse_member(name_tok.lexeme, fields, methods, mains, ctor)
        close = self._expect(PUNCT, "}", "'}'")
        if ctor is None:
            ctor = CtorDecl(params=[], body=[], line=close.line, column=close.column, synthesized=True)
        classes.append(
            ClassDecl(
                name=name_tok.lexeme,
                fields=fields,
                constructor=ctor,
                methods=methods,
                line=kw.line,
                column=kw.column,
            )
        )

    def _parse_member(
        self,
        class_name: str,
        fields: list[FieldDecl],
        methods: list[MethodDecl],
        mains: list[MainDecl],
        ctor: CtorDecl | None,
    ) -> CtorDecl | None:
        if self._check(KEYWORD, "public"):
            pub = self._expect(KEYWORD, "public", "'public'")
            if self._accept(KEYWORD, "static"):
                self._expect(KEYWORD, "void", "'void'")
                self._expect(KEYWORD, "main", "'main'")
                self._expect(PUNCT, "(", "'('")
                self._expect(KEYWORD, "String", "'String'")
                self._expect(PUNCT, "[", "'['")
                self._expect(PUNCT, "]", "']'")
                param = self._expect(IDENT, None, "parameter name")
                self._expect(PUNCT, ")", "')'")
                body, end_line = self._parse_block()
                mains.append(
                    MainDecl(
                        class_name=class_name,
                        param=param.lexeme,
                        body=body,
                        line=pub.line,
                        column=pub.column,
                        end_line=end_line,
                    )
                )
                return ctor
            if self._accept(KEYWORD, "void"):
                ret: TypeRef | None = None
            else:
                ret = self._parse_type()
            name = self._expect(IDENT, None, "member name")
            if self._accept(PUNCT, "("):
                params = self._parse_params()
                self._expect(PUNCT, ")", "')'")
                body, _ = self._parse_block()
                methods.append(
                    MethodDecl(
                        name=name.lexeme,
                        params=params,
                        return_type=ret,
                        body=body,
                        line=pub.line,
                        column=pub.column,
                    )
                )
                return ctor
            if ret is None:
                raise self._fail("'(' after void method name")
            self._expect(PUNCT, ";", "';'")
            fields.append(FieldDecl(type_ref=ret, name=name.lexeme, line=pub.line, column=pub.column))
            return ctor
        if self._check(IDENT):
            name = self._peek()
            assert name is not None
            if name.lexeme != class_name:
                raise self._fail(f"'public' member or constructor '{class_name}'")
            if ctor is not None:
                raise ParseError(
                    f"class '{class_name}' already has a constructor", name.line, name.column
                )
            self.pos += 1
            self._expect(PUNCT, "(", "'('")
            params = self._parse_params()
            self._expect(PUNCT, ")", "')'")
            body, _ = self._parse_block()
            return CtorDecl(params=params, body=body, line=name.line, column=name.column)
        raise self._fail("'public' member, constructor, or '}'")

    def _parse_params(self) -> list[Param]:
        params: list[Param] = []
        if self._check(PUNCT, ")"):
            return params
        while True:
            tref = self._parse_type()
            name = self._expect(IDENT, None, "parameter name")
            params.append(Param(type_ref=tref, name=name.lexeme, line=name.line, column=name.column))
            if not self._accept(PUNCT, ","):
                return params

    def _at_type_start(self) -> bool:
        tok = self._peek()
        if tok is None:
            return False
        return tok.kind == IDENT or (tok.kind == KEYWORD and tok.lexeme in _TYPE_KEYWORDS)

    def _parse_type(self) -> TypeRef:
        tok = self._peek()
        if tok is None or not self._at_type_start():
            raise self._fail("a type")
        self.pos += 1
        is_array = False
        if self._check(PUNCT, "[") and self._check(PUNCT, "]", offset=1):
            self.pos += 2
            is_array = True
        return TypeRef(name=tok.lexeme, is_array=is_array, line=tok.line, column=tok.column)

    # --- statements ---

    def _parse_block(self) -> tuple[list[Stmt], int]:
        self._expect(PUNCT, "{", "'{'")
        stmts: list[Stmt] = []
        while not self._check(PUNCT, "}"):
            if self._peek() is None:
                raise self._fail("'}'")
            stmts.append(self._parse_stmt())
        close = self._expect(PUNCT, "}", "'}'")
        return stmts, close.line

    def _parse_stmt(self) -> Stmt:
        tok = self._peek()
        assert tok is not None
        if tok.kind == KEYWORD and tok.lexeme == "if":
            return self._parse_if()
        if tok.kind == KEYWORD and tok.lexeme == "while":
            return self._parse_while()
        if tok.kind == KEYWORD and tok.lexeme == "return":
            self.pos += 1
            value = None if self._check(PUNCT, ";") else self._parse_expr()
            self._expect(PUNCT, ";", "';'")
            return Return(line=tok.line, column=tok.column, value=value)
        if tok.kind == KEYWORD and tok.lexeme in _TYPE_KEYWORDS:
            return self._parse_decl()
        if tok.kind == IDENT:
            # `Name name`, `Name[] name`: a declaration; anything else is an
            # assignment or expression statement.
            if self._check(IDENT, offset=1):
                return self._parse_decl()
            if (
                self._check(PUNCT, "[", offset=1)
                and self._check(PUNCT, "]", offset=2)
                and self._check(IDENT, offset=3)
            ):
                return self._parse_decl()
            return self._parse_assign_or_expr()
        if tok.kind == KEYWORD and tok.lexeme in ("new", "null", "true", "false"):
            return self._parse_assign_or_expr()
        if tok.kind in (INT_LIT, DOUBLE_LIT, STRING_LIT, CHAR_LIT) or (
            tok.kind == OP and tok.lexeme in ("-", "!")
        ) or (tok.kind == PUNCT and tok.lexeme == "("):
            return self._parse_assign_or_expr()
        raise self._fail("a statement")

    def _parse_decl(self) -> VarDecl:
        tref = self._parse_type()
        name = self._expect(IDENT, None, "variable name")
        init = None
        if self._accept(OP, "="):
            init = self._parse_expr()
        self._expect(PUNCT, ";", "';'")
        return VarDecl(line=tref.line, column=tref.column, type_ref=tref, name=name.lexeme, init=init)

    def _parse_assign_or_expr(self) -> Stmt:
        start = self._peek()
        assert start is not None
        expr = self._parse_expr()
        if self._check(OP, "="):
            if not _is_lvalue(expr):
                raise ParseError("invalid assignment target", start.line, start.column)
            self.pos += 1
            value = self._parse_expr()
            self._expect(PUNCT, ";", "';'")
            return Assign(line=start.line, column=start.column, target=expr, value=value)
        self._expect(PUNCT, ";", "';'")
        return ExprStmt(line=start.line, column=start.column, expr=expr)

    def _parse_if(self) -> If:
        kw = self._expect(KEYWORD, "if", "'if'")
        self._expect(PUNCT, "(", "'('")
        cond = self._parse_expr()
        self._expect(PUNCT, ")", "')'")
        then_body, _ = self._parse_block()
        else_body = None
        if self._accept(KEYWORD, "else"):
            else_body, _ = self._parse_block()
        return If(line=kw.line, column=kw.column, cond=cond, then_body=then_body, else_body=else_body)

    def _parse_while(self) -> While:
        kw = self._expect(KEYWORD, "while", "'while'")
        self._expect(PUNCT, "(", "'('")
        cond = self._parse_expr()
        self._expect(PUNCT, ")", "')'")
        body, _ = self._parse_block()
        return While(line=kw.line, column=kw.column, cond=cond, body=body)

    # --- expressions (precedence climbing) ---

    def _parse_expr(self) -> Expr:
        return self._parse_or()

    def _binary_chain(self, sub, ops: tuple[str, ...]) -> Expr:
        left = sub()
        while True:
            tok = self._peek()
            if tok is None or tok.kind != OP or tok.lexeme not in ops:
                return left
            self.pos += 1
            right = sub()
            node = Binary(line=tok.line, column=tok.column, op=tok.lexeme, left=left, right=right)
            left = node

    def _parse_or(self) -> Expr:
        return self._binary_chain(self._parse_and, ("||",))

    def _parse_and(self) -> Expr:
        return self._binary_chain(self._parse_equality, ("&&",))

    def _parse_equality(self) -> Expr:
        return self._binary_chain(self._parse_relational, ("==", "!="))

    def _parse_relational(self) -> Expr:
        return self._binary_chain(self._parse_additive, ("<", "<=", ">", ">="))

    def _parse_additive(self) -> Expr:
        return self._binary_chain(self._parse_multiplicative, ("+", "-"))

    def _parse_multiplicative(self) -> Expr:
        return self._binary_chain(self._parse_unary, ("*", "/", "%"))

    def _parse_unary(self) -> Expr:
        tok = self._peek()
        if tok is not None and tok.kind == OP and tok.lexeme in ("-", "!"):
            self.pos += 1
            operand = self._parse_unary()
            return Unary(line=tok.line, column=tok.column, op=tok.lexeme, operand=operand)
        return self._parse_postfix()

    def _parse_postfix(self) -> Expr:
        expr, chainable = self._parse_primary()
        while chainable:
            if self._check(PUNCT, "."):
                dot = self.tokens[self.pos]
                self.pos += 1
                name = self._expect(IDENT, None, "field or method name")
                if self._accept(PUNCT, "("):
                    args = self._parse_args()
                    self._expect(PUNCT, ")", "')'")
                    expr = MethodCall(
                        line=dot.line, column=dot.column, obj=expr, name=name.lexeme, args=args
                    )
                    break  # calls end a navigation chain
                expr = FieldAccess(line=dot.line, column=dot.column, obj=expr, field_name=name.lexeme)
            elif self._check(PUNCT, "["):
                br = self.tokens[self.pos]
                self.pos += 1
                index = self._parse_expr()
                self._expect(PUNCT, "]", "']'")
                expr = IndexAccess(line=br.line, column=br.column, array=expr, index=index)
            else:
                break
        return expr

    def _parse_args(self) -> list[Expr]:
        args: list[Expr] = []
        if self._check(PUNCT, ")"):
            return args
        while True:
            args.append(self._parse_expr())
            if not self._accept(PUNCT, ","):
                return args

    def _parse_primary(self) -> tuple[Expr, bool]:
        tok = self._peek()
        if tok is None:
            raise self._fail("an expression")
        line, col = tok.line, tok.column
        if tok.kind == INT_LIT:
            self.pos += 1
            return IntLit(line=line, column=col, value=int(tok.lexeme)), False
        if tok.kind == DOUBLE_LIT:
            self.pos += 1
            return DoubleLit(line=line, column=col, value=float(tok.lexeme)), False
        if tok.kind == STRING_LIT:
            self.pos += 1
            return StringLit(line=line, column=col, value=unescape_text(tok.lexeme)), False
        if tok.kind == CHAR_LIT:
            self.pos += 1
            return CharLit(line=line, column=col, value=unescape_text(tok.lexeme)), False
        if tok.kind == KEYWORD and tok.lexeme in ("true", "false"):
            self.pos += 1
            return BoolLit(line=line, column=col, value=tok.lexeme == "true"), False
        if tok.kind == KEYWORD and tok.lexeme == "null":
            self.pos += 1
            return NullLit(line=line, column=col), False
        if tok.kind == KEYWORD and tok.lexeme == "new":
            self.pos += 1
            return self._parse_new(line, col), False
        if tok.kind == PUNCT and tok.lexeme == "(":
            self.pos += 1
            inner = self._parse_expr()
            self._expect(PUNCT, ")", "')'")
            return inner, False
        if tok.kind == IDENT:
            if (
                tok.lexeme == "System"
                and self._check(PUNCT, ".", 1)
                and self._check(IDENT, "out", 2)
                and self._check(PUNCT, ".", 3)
                and self._check(IDENT, "println", 4)
                and self._check(PUNCT, "(", 5)
            ):
                self.pos += 6
                arg = self._parse_expr()
                self._expect(PUNCT, ")", "')'")
                return Println(line=line, column=col, arg=arg), False
            self.pos += 1
            return Var(line=line, column=col, name=tok.lexeme), True
        raise self._fail("an expression")

    def _parse_new(self, line: int, col: int) -> Expr:
        tok = self._peek()
        if tok is None or not self._at_type_start():
            raise self._fail("a type after 'new'")
        self.pos += 1
        if self._accept(PUNCT, "("):
            if tok.kind != IDENT:
                raise ParseError(f"'{tok.lexeme}' is not a class", tok.line, tok.column)
            args = self._parse_args()
            self._expect(PUNCT, ")", "')'")
            return NewObject(line=line, column=col, class_name=tok.lexeme, args=args)
        self._expect(PUNCT, "[", "'(' or '['")
        length = self._parse_expr()
        self._expect(PUNCT, "]", "']'")
        elem = TypeRef(name=tok.lexeme, is_array=False, line=tok.line, column=tok.column)
        return NewArray(line=line, column=col, elem_type=elem, length=length)


def _is_lvalue(expr: Expr) -> bool:
    while True:
        if isinstance(expr, Var):
            return True
        if isinstance(expr, FieldAccess):
            expr = expr.obj
        elif isinstance(expr, IndexAccess):
            expr = expr.array
        else:
            return False


def parse_program(source: str) -> Program:
    """Parse source text into a Program AST; first error aborts."""
    return _Parser(tokenize(source)).parse_program()
