"""Statement-level execution of checked programs on the notional machine.

The engine walks the AST with generator recursion: every executed statement
yields one trace event carrying a frozen snapshot, and `new`/method calls
additionally yield a marker event when they push a frame, so constructor and
method bodies are stepped through statement by statement. Runtime faults
(null dereference, bad index, integer division by zero, exhausted step
budget) become a final halt event with error status; the offending frame
stack is preserved in its snapshot.
"""

from __future__ import annotations

from ..lang.nodes import (
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
from ..lang.printer import expr_text
from ..lang.types import DOUBLE
from .state import (
    ERROR,
    FINISHED,
    RUNNING,
    ArrayNode,
    Frame,
    MachineState,
    ObjectNode,
    Trace,
    TraceEvent,
)
from .values import (
    BoolV,
    CharV,
    DoubleV,
    IntV,
    NullV,
    RefV,
    StrV,
    Value,
    double_div,
    double_mod,
    int_div,
    int_mod,
    render_inline,
    render_plain,
    wrap32,
)

DEFAULT_MAX_STEPS = 10000


class MachineError(Exception):
    """API misuse: unchecked program, stepping a stopped machine, ..."""


class PathError(Exception):
    pass


class UnknownNameError(PathError):
    pass


class NullTraversalError(PathError):
    pass


class IndexRangeError(PathError):
    pass


class _RuntimeHalt(Exception):
    def __init__(self, message: str, line: int):
        super().__init__(message)
        self.message = message
        self.line = line


class _ReturnSignal(Exception):
    def __init__(self, value: Value | None):
        self.value = value


_DEFAULTS = {
    "int": IntV(0),
    "double": DoubleV(0.0),
    "boolean": BoolV(False),
    "char": CharV("\0"),
    "String": StrV(""),
}


def _default_for(tref: TypeRef) -> Value:
    if tref.is_array:
        return NullV()
    return _DEFAULTS.get(tref.name, NullV())


def _coerce_tref(value: Value, tref: TypeRef) -> Value:
    if not tref.is_array and tref.name == "double" and isinstance(value, IntV):
        return DoubleV(float(value.v))
    return value


def _coerce_static(value: Value, static_type) -> Value:
    if static_type == DOUBLE and isinstance(value, IntV):
        return DoubleV(float(value.v))
    return value


class _LiveArray:
    __slots__ = ("elem_type", "cells", "_frozen")

    def __init__(self, elem_type: str, cells: list[Value]):
        self.elem_type = elem_type
        self.cells = cells
        self._frozen: ArrayNode | None = None

    def freeze(self) -> ArrayNode:
        if self._frozen is None:
            self._frozen = ArrayNode(self.elem_type, tuple(self.cells))
        return self._frozen


class _LiveObject:
    __slots__ = ("class_name", "fields", "_frozen")

    def __init__(self, class_name: str, fields: dict[str, Value]):
        self.class_name = class_name
        self.fields = fields
        self._frozen: ObjectNode | None = None

    def freeze(self) -> ObjectNode:
        if self._frozen is None:
            self._frozen = ObjectNode(self.class_name, tuple(self.fields.items()))
        return self._frozen


class _LiveFrame:
    __slots__ = ("label", "bindings", "this_id", "scopes")

    def __init__(self, label: str, this_id: int | None):
        self.label = label
        self.bindings: dict[str, Value] = {}
        self.this_id = this_id
        self.scopes: list[list[str]] = []

    def freeze(self) -> Frame:
        return Frame(self.label, tuple(self.bindings.items()))


class _Engine:
    def __init__(self, program: Program):
        if not program.checked:
            raise MachineError("program has not been validated")
        self.program = program
        self.frames: list[_LiveFrame] = [_LiveFrame("main", None)]
        self.heap: dict[int, _LiveArray | _LiveObject] = {}
        self.next_id = 1
        self.output: list[str] = []

    # --- snapshots ---

    def freeze_frames(self) -> tuple[Frame, ...]:
        return tuple(f.freeze() for f in self.frames)

    def freeze_heap(self):
        return tuple((hid, node.freeze()) for hid, node in self.heap.items())

    def _ev(self, kind: str, line: int, description: str):
        return ("ev", kind, line, description, self.freeze_frames(), self.freeze_heap())

    # --- allocation ---

    def _alloc(self, node) -> int:
        hid = self.next_id
        self.next_id += 1
        self.heap[hid] = node
        return hid

    def _node(self, ref: RefV):
        return self.heap[ref.heap_id]

    # --- execution ---

    def run(self):
        try:
            yield from self._exec_block(self.program.main_body, self.frames[0], cleanup=False)
        except _ReturnSignal:
            pass

    def _exec_block(self, stmts: list[Stmt], frame: _LiveFrame, cleanup: bool = True):
        """Execute statements; nested blocks drop their locals on exit.

        Top-level bodies keep theirs so final snapshots still show them.
        """
        frame.scopes.append([])
        for stmt in stmts:
            yield ("pre", stmt.line)
            yield from self._exec_stmt(stmt, frame)
        names = frame.scopes.pop()
        if cleanup:
            for name in names:
                del frame.bindings[name]

    def _exec_stmt(self, stmt: Stmt, frame: _LiveFrame):
        if isinstance(stmt, VarDecl):
            yield from self._exec_decl(stmt, frame)
        elif isinstance(stmt, Assign):
            yield from self._exec_assign(stmt, frame)
        elif isinstance(stmt, ExprStmt):
            yield from self._exec_expr_stmt(stmt, frame)
        elif isinstance(stmt, If):
            cond = yield from self._eval(stmt.cond, frame)
            text = expr_text(stmt.cond)
            if cond.v:
                yield self._ev("branch", stmt.line, f"Condition {text} is true; entering the if branch.")
                yield from self._exec_block(stmt.then_body, frame)
            elif stmt.else_body is not None:
                yield self._ev("branch", stmt.line, f"Condition {text} is false; entering the else branch.")
                yield from self._exec_block(stmt.else_body, frame)
            else:
                yield self._ev("branch", stmt.line, f"Condition {text} is false; skipping the if branch.")
        elif isinstance(stmt, While):
            text = expr_text(stmt.cond)
            while True:
                cond = yield from self._eval(stmt.cond, frame)
                if cond.v:
                    yield self._ev("branch", stmt.line, f"Condition {text} is true; entering the loop body.")
                    yield from self._exec_block(stmt.body, frame)
                    yield ("pre", stmt.line)
                else:
                    yield self._ev("branch", stmt.line, f"Condition {text} is false; leaving the loop.")
                    return
        elif isinstance(stmt, Return):
            value = None
            if stmt.value is not None:
                value = yield from self._eval(stmt.value, frame)
            if len(self.frames) > 1:
                self.frames.pop()
                if value is not None:
                    desc = f"Returned {render_inline(value)} from {frame.label}."
                else:
                    desc = f"Returned from {frame.label}."
                yield self._ev("return", stmt.line, desc)
            else:
                yield self._ev("return", stmt.line, "Returned from main.")
            raise _ReturnSignal(value)
        else:  # pragma: no cover
            raise AssertionError(f"unexpected statement {stmt!r}")

    def _exec_decl(self, stmt: VarDecl, frame: _LiveFrame):
        if stmt.init is None:
            value = _default_for(stmt.type_ref)
            desc = f"Declared {stmt.name} with default value {render_inline(value)}."
        else:
            value = yield from self._eval(stmt.init, frame)
            value = _coerce_tref(value, stmt.type_ref)
            if isinstance(value, RefV):
                if isinstance(stmt.init, NewArray):
                    node = self._node(value)
                    desc = (
                        f"Declared {stmt.name} and pointed it to new "
                        f"{node.elem_type}[{len(node.cells)}] at memory area @{value.heap_id}."
                    )
                else:
                    desc = f"Declared {stmt.name} and pointed it to memory area @{value.heap_id}."
            elif isinstance(value, NullV):
                desc = f"Declared {stmt.name} and set it to null."
            else:
                desc = f"Declared {stmt.name} and set it to {render_inline(value)}."
        frame.bindings[stmt.name] = value
        frame.scopes[-1].append(stmt.name)
        yield self._ev("decl", stmt.line, desc)

    def _exec_assign(self, stmt: Assign, frame: _LiveFrame):
        target = stmt.target
        # evaluate the target's address, then the right-hand side
        if isinstance(target, Var):
            address = ("var", target)
            text = target.name
        elif isinstance(target, FieldAccess):
            obj = yield from self._eval(target.obj, frame)
            address = ("field", obj, target.field_name)
            text = f"{expr_text(target.obj)}.{target.field_name}"
        elif isinstance(target, IndexAccess):
            ref = yield from self._eval(target.array, frame)
            idx = yield from self._eval(target.index, frame)
            address = ("cell", ref, idx)
            text = f"{expr_text(target.array)}[{idx.v}]"
        else:  # pragma: no cover
            raise AssertionError(f"bad assignment target {target!r}")

        value = yield from self._eval(stmt.value, frame)
        value = _coerce_static(value, target.static_type)
        self._store(address, value, stmt.line, frame)

        if isinstance(value, RefV):
            desc = f"Pointed {text} at memory area @{value.heap_id}."
        elif isinstance(value, NullV):
            desc = f"Set {text} to null."
        else:
            desc = f"Set {text} to {render_inline(value)}."
        yield self._ev("assign", stmt.line, desc)

    def _store(self, address, value: Value, line: int, frame: _LiveFrame) -> None:
        kind = address[0]
        if kind == "var":
            var = address[1]
            if var.resolution == "field":
                node = self.heap[frame.this_id]
                node.fields[var.name] = value
                node._frozen = None
            else:
                frame.bindings[var.name] = value
        elif kind == "field":
            obj, field_name = address[1], address[2]
            if isinstance(obj, NullV):
                raise _RuntimeHalt(
                    f"NullPointer: cannot assign field '{field_name}' of null", line
                )
            node = self._node(obj)
            node.fields[field_name] = value
            node._frozen = None
        else:
            ref, idx = address[1], address[2]
            if isinstance(ref, NullV):
                raise _RuntimeHalt("NullPointer: cannot index null", line)
            node = self._node(ref)
            i = idx.v
            if i < 0 or i >= len(node.cells):
                raise _RuntimeHalt(
                    f"ArrayIndexOutOfBounds: index {i} out of bounds for length {len(node.cells)}",
                    line,
                )
            node.cells[i] = value
            node._frozen = None

    def _exec_expr_stmt(self, stmt: ExprStmt, frame: _LiveFrame):
        expr = stmt.expr
        if isinstance(expr, Println):
            value = yield from self._eval(expr.arg, frame)
            text = render_plain(value)
            self.output.append(text)
            yield self._ev("print", stmt.line, f'Printed "{text}".')
        else:
            yield from self._eval(expr, frame)
            yield self._ev("call", stmt.line, f"Finished {expr_text(expr)}.")

    # --- expression evaluation (a generator: calls and news step) ---

    def _eval(self, expr: Expr, frame: _LiveFrame):
        if isinstance(expr, IntLit):
            return IntV(wrap32(expr.value))
        if isinstance(expr, DoubleLit):
            return DoubleV(expr.value)
        if isinstance(expr, BoolLit):
            return BoolV(expr.value)
        if isinstance(expr, CharLit):
            return CharV(expr.value)
        if isinstance(expr, StringLit):
            return StrV(expr.value)
        if isinstance(expr, NullLit):
            return NullV()
        if isinstance(expr, Var):
            if expr.resolution == "this":
                return RefV(frame.this_id)
            if expr.resolution == "field":
                return self.heap[frame.this_id].fields[expr.name]
            try:
                return frame.bindings[expr.name]
            except KeyError:  # pragma: no cover - validator prevents this
                raise MachineError(f"unbound variable '{expr.name}'") from None
        if isinstance(expr, FieldAccess):
            obj = yield from self._eval(expr.obj, frame)
            if isinstance(obj, NullV):
                raise _RuntimeHalt(
                    f"NullPointer: cannot read field '{expr.field_name}' of null", expr.line
                )
            node = self._node(obj)
            if isinstance(node, _LiveArray):
                return IntV(len(node.cells))  # only .length passes validation
            return node.fields[expr.field_name]
        if isinstance(expr, IndexAccess):
            ref = yield from self._eval(expr.array, frame)
            idx = yield from self._eval(expr.index, frame)
            if isinstance(ref, NullV):
                raise _RuntimeHalt("NullPointer: cannot index null", expr.line)
            node = self._node(ref)
            i = idx.v
            if i < 0 or i >= len(node.cells):
                raise _RuntimeHalt(
                    f"ArrayIndexOutOfBounds: index {i} out of bounds for length {len(node.cells)}",
                    expr.line,
                )
            return node.cells[i]
        if isinstance(expr, Unary):
            operand = yield from self._eval(expr.operand, frame)
            if expr.op == "-":
                if isinstance(operand, IntV):
                    return IntV(wrap32(-operand.v))
                return DoubleV(-operand.v)
            return BoolV(not operand.v)
        if isinstance(expr, Binary):
            return (yield from self._eval_binary(expr, frame))
        if isinstance(expr, MethodCall):
            return (yield from self._eval_call(expr, frame))
        if isinstance(expr, NewObject):
            return (yield from self._eval_new_object(expr, frame))
        if isinstance(expr, NewArray):
            length = yield from self._eval(expr.length, frame)
            n = length.v
            if n < 0:
                raise _RuntimeHalt(f"NegativeArraySize: {n}", expr.line)
            default = _default_for(expr.elem_type)
            hid = self._alloc(_LiveArray(expr.elem_type.name, [default] * n))
            return RefV(hid)
        raise AssertionError(f"unexpected expression {expr!r}")  # pragma: no cover

    def _eval_binary(self, expr: Binary, frame: _LiveFrame):
        op = expr.op
        if op in ("&&", "||"):
            left = yield from self._eval(expr.left, frame)
            if op == "&&" and not left.v:
                return BoolV(False)
            if op == "||" and left.v:
                return BoolV(True)
            right = yield from self._eval(expr.right, frame)
            return BoolV(bool(right.v))
        left = yield from self._eval(expr.left, frame)
        right = yield from self._eval(expr.right, frame)
        if op in ("==", "!="):
            eq = _values_equal(left, right)
            return BoolV(eq if op == "==" else not eq)
        if op in ("<", "<=", ">", ">="):
            a, b = left.v, right.v
            return BoolV({"<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[op])
        if op == "+" and (isinstance(left, StrV) or isinstance(right, StrV)):
            return StrV(render_plain(left) + render_plain(right))
        if isinstance(left, IntV) and isinstance(right, IntV):
            a, b = left.v, right.v
            if op == "+":
                return IntV(wrap32(a + b))
            if op == "-":
                return IntV(wrap32(a - b))
            if op == "*":
                return IntV(wrap32(a * b))
            if b == 0:
                word = "division" if op == "/" else "modulo"
                raise _RuntimeHalt(f"Arithmetic: {word} by zero", expr.line)
            return IntV(int_div(a, b) if op == "/" else int_mod(a, b))
        a = float(left.v)
        b = float(right.v)
        if op == "+":
            return DoubleV(a + b)
        if op == "-":
            return DoubleV(a - b)
        if op == "*":
            return DoubleV(a * b)
        if op == "/":
            return DoubleV(double_div(a, b))
        return DoubleV(double_mod(a, b))

    def _eval_call(self, expr: MethodCall, frame: _LiveFrame):
        obj = yield from self._eval(expr.obj, frame)
        args = []
        for arg in expr.args:
            args.append((yield from self._eval(arg, frame)))
        if isinstance(obj, NullV):
            raise _RuntimeHalt(
                f"NullPointer: cannot call method '{expr.name}' on null", expr.line
            )
        cls = self.program.class_named(expr.owner)
        method = next(m for m in cls.methods if m.name == expr.name)
        callee = _LiveFrame(f"{cls.name}.{method.name}", obj.heap_id)
        callee.bindings["this"] = obj
        for param, value in zip(method.params, args):
            callee.bindings[param.name] = _coerce_tref(value, param.type_ref)
        self.frames.append(callee)
        yield self._ev(
            "call",
            expr.line,
            f"Calling {cls.name}.{method.name} on memory area @{obj.heap_id}.",
        )
        try:
            yield from self._exec_block(method.body, callee, cleanup=False)
        except _ReturnSignal as sig:
            value = sig.value if sig.value is not None else NullV()
            if method.return_type is not None:
                value = _coerce_tref(value, method.return_type)
            return value
        self.frames.pop()  # fell off the end of a void method
        return NullV()

    def _eval_new_object(self, expr: NewObject, frame: _LiveFrame):
        args = []
        for arg in expr.args:
            args.append((yield from self._eval(arg, frame)))
        cls: ClassDecl = self.program.class_named(expr.class_name)
        fields = {f.name: _default_for(f.type_ref) for f in cls.fields}
        hid = self._alloc(_LiveObject(cls.name, fields))
        callee = _LiveFrame(f"{cls.name}.{cls.name}", hid)
        callee.bindings["this"] = RefV(hid)
        for param, value in zip(cls.constructor.params, args):
            callee.bindings[param.name] = _coerce_tref(value, param.type_ref)
        self.frames.append(callee)
        yield self._ev(
            "alloc",
            expr.line,
            f"Allocated memory area @{hid} for a new {cls.name}; running its constructor.",
        )
        try:
            yield from self._exec_block(cls.constructor.body, callee, cleanup=False)
            self.frames.pop()
        except _ReturnSignal:
            pass  # the return statement already popped the frame
        return RefV(hid)


def _values_equal(left: Value, right: Value) -> bool:
    num = (IntV, DoubleV)
    if isinstance(left, num) and isinstance(right, num):
        return float(left.v) == float(right.v)
    if isinstance(left, RefV) and isinstance(right, RefV):
        return left.heap_id == right.heap_id
    return left == right


# --- trace drivers ---


def _make_state(frames, heap, status, error, next_line, index) -> MachineState:
    return MachineState(
        step_index=index,
        frames=frames,
        heap=heap,
        status=status,
        error=error,
        next_line=next_line,
        seq=index + 1,
    )


def _pump(program: Program, max_steps: int | None = None, stop_after: int | None = None):
    """Drive the engine; returns (events, output).

    Statement events become trace events once the following statement is
    known (its line fills `next_line`). When `max_steps` is set, the trace
    is cut to exactly that many events with a budget-error halt. When
    `stop_after` is set, pumping stops as soon as that many events exist.
    """
    engine = _Engine(program)
    events: list[TraceEvent] = []
    pending = None  # raw ("ev", ...) awaiting its next_line

    def flush(next_line: int | None) -> None:
        nonlocal pending
        if pending is None:
            return
        _tag, kind, line, description, frames, heap = pending
        index = len(events)
        state = _make_state(frames, heap, RUNNING, None, next_line, index)
        events.append(TraceEvent(index, line, kind, description, state))
        pending = None

    def halt(status: str, error: str | None, line: int, description: str, frames, heap) -> None:
        index = len(events)
        state = _make_state(frames, heap, status, error, None, index)
        events.append(TraceEvent(index, line, kind="halt", description=description, state=state))

    def done() -> bool:
        return stop_after is not None and len(events) >= stop_after

    if not program.main_body:
        halt(FINISHED, None, program.main_end_line, "Execution finished.",
             engine.freeze_frames(), engine.freeze_heap())
        return events, tuple(engine.output)

    gen = engine.run()
    try:
        for item in gen:
            if item[0] == "pre":
                line = item[1]
                flush(line)
                if done():
                    return events, tuple(engine.output)
                if max_steps is not None and len(events) >= max_steps - 1:
                    halt(ERROR, "step budget exceeded", line,
                         "Execution halted: step budget exceeded.",
                         engine.freeze_frames(), engine.freeze_heap())
                    return events, tuple(engine.output)
            else:
                flush(item[2])
                if done():
                    return events, tuple(engine.output)
                if max_steps is not None and len(events) >= max_steps - 1:
                    halt(ERROR, "step budget exceeded", item[2],
                         "Execution halted: step budget exceeded.",
                         item[4], item[5])
                    return events, tuple(engine.output)
                pending = item
    except _RuntimeHalt as fault:
        flush(fault.line)
        if not done():
            halt(ERROR, fault.message, fault.line,
                 f"Execution halted: {fault.message}.",
                 engine.freeze_frames(), engine.freeze_heap())
        return events, tuple(engine.output)

    flush(None)
    if not done():
        halt(FINISHED, None, program.main_end_line, "Execution finished.",
             engine.freeze_frames(), engine.freeze_heap())
    return events, tuple(engine.output)


def init_machine(program: Program) -> MachineState:
    """Fresh machine: one `main` frame, empty heap, about to run."""
    engine = _Engine(program)
    if program.main_body:
        status, next_line = RUNNING, program.main_body[0].line
    else:
        status, next_line = FINISHED, None
    return MachineState(
        step_index=0,
        frames=engine.freeze_frames(),
        heap=engine.freeze_heap(),
        status=status,
        error=None,
        next_line=next_line,
        seq=0,
    )


def step(state: MachineState, program: Program) -> tuple[MachineState, TraceEvent]:
    """Execute exactly one statement from `state`.

    Execution is deterministic, so the machine is replayed to the state's
    internal cursor and advanced once; the result is identical to what a
    resumable engine would produce.
    """
    if state.status != RUNNING:
        raise MachineError("machine is not running")
    events, _output = _pump(program, stop_after=state.seq + 1)
    if len(events) <= state.seq:
        raise MachineError("state is not reachable in this program")
    event = events[state.seq]
    return event.state, event


def run_to_end(program: Program, max_steps: int = DEFAULT_MAX_STEPS,
               source_text: str | None = None) -> Trace:
    """Run the whole program, producing at most `max_steps` trace events."""
    if max_steps < 1:
        raise MachineError("max_steps must be at least 1")
    if source_text is None:
        from ..lang.printer import pretty_print

        source_text = pretty_print(program)
    events, output = _pump(program, max_steps=max_steps)
    return Trace(
        source_text=source_text,
        program_name=program.main_class or "program",
        events=tuple(events),
        output=output,
        final_status=events[-1].state.status,
    )


# --- path reads ---


def _parse_path(path: str):
    segs = []
    i = 0
    n = len(path)

    def read_name():
        nonlocal i
        start = i
        while i < n and (path[i].isalnum() or path[i] == "_"):
            i += 1
        if start == i:
            raise PathError(f"malformed path {path!r}")
        return path[start:i]

    root = read_name()
    while i < n:
        if path[i] == ".":
            i += 1
            segs.append(("field", read_name()))
        elif path[i] == "[":
            i += 1
            start = i
            while i < n and path[i] != "]":
                i += 1
            if i >= n:
                raise PathError(f"malformed path {path!r}")
            index_text = path[start:i].strip()
            i += 1
            if not index_text.lstrip("-").isdigit():
                raise PathError(f"malformed path {path!r}")
            segs.append(("index", int(index_text)))
        else:
            raise PathError(f"malformed path {path!r}")
    return root, segs


def read_path(state: MachineState, path: str) -> Value:
    """Follow a textual path like `ref_p.rut` or `people[0].edad`."""
    root, segs = _parse_path(path)
    top = state.top_frame()
    if not top.has(root):
        raise UnknownNameError(f"unknown binding '{root}'")
    value = top.binding(root)
    heap = dict(state.heap)
    taken = root
    for kind, arg in segs:
        if isinstance(value, NullV):
            raise NullTraversalError(f"'{taken}' is null")
        if not isinstance(value, RefV):
            raise PathError(f"'{taken}' is not a reference")
        node = heap[value.heap_id]
        if kind == "field":
            if isinstance(node, ArrayNode):
                if arg == "length":
                    value = IntV(len(node.cells))
                    taken += ".length"
                    continue
                raise UnknownNameError(f"unknown field '{arg}' on an array")
            try:
                value = node.field(arg)
            except KeyError:
                raise UnknownNameError(
                    f"unknown field '{arg}' in class '{node.class_name}'"
                ) from None
            taken += f".{arg}"
        else:
            if isinstance(node, ObjectNode):
                raise PathError(f"'{taken}' is an object, not an array")
            if arg < 0 or arg >= len(node.cells):
                raise IndexRangeError(
                    f"index {arg} out of bounds for length {len(node.cells)}"
                )
            value = node.cells[arg]
            taken += f"[{arg}]"
    return value
