"""Seeded random program generators.

`straightline(seed)` produces source for a valid program whose main body
uses only declarations, assignments, `new`, and field/index reads, and is
guaranteed free of runtime errors (null checks and bounds are tracked
exactly, which is possible because there are no branches). `rich(seed)`
adds methods, branches, loops, arithmetic, and printing; those programs are
only ever parsed, validated, and pretty-printed by tests, never executed.
"""

from __future__ import annotations

import random
import string

_CLASS_NAMES = ["Point", "Person", "Node", "Box", "Pair", "Item"]
_PRIMS = ["int", "double", "boolean", "char", "String"]


class _Cls:
    def __init__(self, name, fields, param_style):
        self.name = name
        self.fields = fields  # list of (type_name, field_name); type may be a class
        self.param_style = param_style  # "this" or "implicit"


def _literal(rng: random.Random, type_name: str) -> str:
    if type_name == "int":
        return str(rng.randint(-99, 99))
    if type_name == "double":
        return f"{rng.randint(0, 99)}.{rng.randint(0, 99):02d}"
    if type_name == "boolean":
        return rng.choice(["true", "false"])
    if type_name == "char":
        return f"'{rng.choice(string.ascii_lowercase)}'"
    if type_name == "String":
        word = "".join(rng.choice(string.ascii_lowercase) for _ in range(rng.randint(1, 5)))
        return f'"{word}"'
    raise AssertionError(type_name)


def _render_classes(classes: list[_Cls]) -> list[str]:
    lines: list[str] = []
    for cls in classes:
        lines.append(f"class {cls.name} {{")
        for tname, fname in cls.fields:
            lines.append(f"    public {tname} {fname};")
        params = []
        body = []
        for tname, fname in cls.fields:
            if cls.param_style == "this":
                params.append(f"{tname} {fname}")
                body.append(f"        this.{fname} = {fname};")
            else:
                params.append(f"{tname} p_{fname}")
                body.append(f"        {fname} = p_{fname};")
        lines.append(f"    {cls.name}({', '.join(params)}) {{")
        lines.extend(body)
        lines.append("    }")
        lines.append("}")
        lines.append("")
    return lines


class _StraightGen:
    """Tracks heap shape exactly so generated reads can never fault."""

    def __init__(self, rng: random.Random, max_stmts: int, max_allocs: int):
        self.rng = rng
        self.max_stmts = max_stmts
        self.max_allocs = max_allocs
        self.classes: list[_Cls] = []
        self.stmts: list[str] = []
        self.var_n = 0
        self.allocs = 0
        # var name -> ("prim", type) | ("obj", cls, gid|None) | ("arr", elem, is_cls, gid|None)
        self.vars: dict[str, tuple] = {}
        # gid -> for arrays: (elem, is_cls, length, [cell gids]); for objects: class name
        self.arr_info: dict[int, tuple] = {}
        self.obj_info: dict[int, str] = {}
        # (gid, field) -> gid|None for class-typed fields
        self.field_gid: dict[tuple[int, str], int | None] = {}
        self.next_gid = 1

    def fresh(self, prefix: str) -> str:
        name = f"{prefix}{self.var_n}"
        self.var_n += 1
        return name

    def gen_classes(self) -> None:
        rng = self.rng
        count = rng.randint(1, 3)
        names = rng.sample(_CLASS_NAMES, count)
        for i, name in enumerate(names):
            fields = []
            for j in range(rng.randint(1, 3)):
                if i > 0 and rng.random() < 0.35:
                    tname = names[rng.randrange(i)]
                else:
                    tname = rng.choice(_PRIMS)
                fields.append((tname, f"f{j}"))
            self.classes.append(_Cls(name, fields, rng.choice(["this", "implicit"])))

    def class_named(self, name: str) -> _Cls:
        for c in self.classes:
            if c.name == name:
                return c
        raise KeyError(name)

    # --- pickers ---

    def prim_vars(self, type_name=None):
        return [
            (n, info[1])
            for n, info in self.vars.items()
            if info[0] == "prim" and (type_name is None or info[1] == type_name)
        ]

    def obj_vars(self, cls=None, nonnull=False):
        out = []
        for n, info in self.vars.items():
            if info[0] != "obj":
                continue
            if cls is not None and info[1] != cls:
                continue
            if nonnull and info[2] is None:
                continue
            out.append((n, info[1], info[2]))
        return out

    def arr_vars(self, nonnull=False):
        out = []
        for n, info in self.vars.items():
            if info[0] != "arr":
                continue
            if nonnull and info[3] is None:
                continue
            out.append((n, info[1], info[2], info[3]))
        return out

    def value_for(self, type_name: str, is_class: bool) -> tuple[str, int | None]:
        """Source text plus tracked gid (class types) for a value of the type."""
        rng = self.rng
        if not is_class:
            same = self.prim_vars(type_name)
            if same and rng.random() < 0.3:
                return rng.choice(same)[0], None
            return _literal(rng, type_name), None
        candidates = self.obj_vars(cls=type_name)
        if candidates and rng.random() < 0.75:
            name, _, gid = rng.choice(candidates)
            return name, gid
        return "null", None

    # --- statement emitters; each returns True if it emitted ---

    def emit_prim_decl(self) -> bool:
        rng = self.rng
        t = rng.choice(_PRIMS)
        name = self.fresh("v")
        if rng.random() < 0.75:
            text, _ = self.value_for(t, False)
            if t == "double" and rng.random() < 0.4:
                text = str(rng.randint(-50, 50))  # int literal widens
            self.stmts.append(f"        {t} {name} = {text};")
        else:
            self.stmts.append(f"        {t} {name};")
        self.vars[name] = ("prim", t)
        return True

    def emit_arr_decl(self) -> bool:
        if self.allocs >= self.max_allocs:
            return False
        rng = self.rng
        if self.classes and rng.random() < 0.4:
            elem, is_cls = rng.choice(self.classes).name, True
        else:
            elem, is_cls = rng.choice(_PRIMS), False
        length = rng.randint(0, 4)
        name = self.fresh("a")
        gid = self.next_gid
        self.next_gid += 1
        self.allocs += 1
        self.arr_info[gid] = (elem, is_cls, length, [None] * length)
        self.vars[name] = ("arr", elem, is_cls, gid)
        self.stmts.append(f"        {elem}[] {name} = new {elem}[{length}];")
        return True

    def emit_obj_decl(self) -> bool:
        if not self.classes or self.allocs >= self.max_allocs:
            return False
        rng = self.rng
        cls = rng.choice(self.classes)
        args = []
        gid = self.next_gid
        self.next_gid += 1
        self.allocs += 1
        self.obj_info[gid] = cls.name
        for tname, fname in cls.fields:
            is_cls = any(c.name == tname for c in self.classes)
            text, agid = self.value_for(tname, is_cls)
            args.append(text)
            if is_cls:
                self.field_gid[(gid, fname)] = agid
        name = self.fresh("o")
        self.vars[name] = ("obj", cls.name, gid)
        self.stmts.append(f"        {cls.name} {name} = new {cls.name}({', '.join(args)});")
        return True

    def emit_alias_decl(self) -> bool:
        rng = self.rng
        pool = []
        for n, info in self.vars.items():
            if info[0] == "obj":
                pool.append((n, f"{info[1]} ", ("obj", info[1], info[2])))
            elif info[0] == "arr":
                pool.append((n, f"{info[1]}[] ", info))
        if not pool:
            return False
        src, tdecl, info = rng.choice(pool)
        name = self.fresh("r")
        self.vars[name] = info
        self.stmts.append(f"        {tdecl}{name} = {src};")
        return True

    def emit_null_decl(self) -> bool:
        if not self.classes:
            return False
        rng = self.rng
        cls = rng.choice(self.classes)
        name = self.fresh("o")
        self.vars[name] = ("obj", cls.name, None)
        self.stmts.append(f"        {cls.name} {name} = null;")
        return True

    def emit_local_assign(self) -> bool:
        rng = self.rng
        prims = self.prim_vars()
        objs = [(n, i) for n, i in self.vars.items() if i[0] == "obj"]
        choices = []
        if prims:
            choices.append("prim")
        if objs:
            choices.append("obj")
        if not choices:
            return False
        kind = rng.choice(choices)
        if kind == "prim":
            name, t = rng.choice(prims)
            text, _ = self.value_for(t, False)
            self.stmts.append(f"        {name} = {text};")
        else:
            name, info = rng.choice(objs)
            text, gid = self.value_for(info[1], True)
            if text == name:
                return False
            self.vars[name] = ("obj", info[1], gid)
            self.stmts.append(f"        {name} = {text};")
        return True

    def emit_field_assign(self) -> bool:
        rng = self.rng
        targets = self.obj_vars(nonnull=True)
        if not targets:
            return False
        name, cls_name, gid = rng.choice(targets)
        cls = self.class_named(cls_name)
        tname, fname = rng.choice(cls.fields)
        is_cls = any(c.name == tname for c in self.classes)
        text, agid = self.value_for(tname, is_cls)
        if is_cls:
            self.field_gid[(gid, fname)] = agid
        self.stmts.append(f"        {name}.{fname} = {text};")
        return True

    def emit_cell_assign(self) -> bool:
        rng = self.rng
        arrays = [a for a in self.arr_vars(nonnull=True) if self.arr_info[a[3]][2] > 0]
        if not arrays:
            return False
        name, elem, is_cls, gid = rng.choice(arrays)
        _, _, length, cells = self.arr_info[gid]
        idx = rng.randrange(length)
        text, agid = self.value_for(elem, is_cls)
        if is_cls:
            cells[idx] = agid
        self.stmts.append(f"        {name}[{idx}] = {text};")
        return True

    def emit_field_read(self) -> bool:
        rng = self.rng
        sources = self.obj_vars(nonnull=True)
        if not sources:
            return False
        name, cls_name, gid = rng.choice(sources)
        cls = self.class_named(cls_name)
        tname, fname = rng.choice(cls.fields)
        is_cls = any(c.name == tname for c in self.classes)
        if is_cls:
            new = self.fresh("o")
            self.vars[new] = ("obj", tname, self.field_gid.get((gid, fname)))
            self.stmts.append(f"        {tname} {new} = {name}.{fname};")
        else:
            new = self.fresh("v")
            self.vars[new] = ("prim", tname)
            self.stmts.append(f"        {tname} {new} = {name}.{fname};")
        return True

    def emit_cell_read(self) -> bool:
        rng = self.rng
        arrays = [a for a in self.arr_vars(nonnull=True) if self.arr_info[a[3]][2] > 0]
        if not arrays:
            return False
        name, elem, is_cls, gid = rng.choice(arrays)
        _, _, length, cells = self.arr_info[gid]
        idx = rng.randrange(length)
        if is_cls:
            new = self.fresh("o")
            self.vars[new] = ("obj", elem, cells[idx])
            self.stmts.append(f"        {elem} {new} = {name}[{idx}];")
        else:
            new = self.fresh("v")
            self.vars[new] = ("prim", elem)
            self.stmts.append(f"        {elem} {new} = {name}[{idx}];")
        return True

    def emit_length_read(self) -> bool:
        arrays = self.arr_vars(nonnull=True)
        if not arrays:
            return False
        name = self.rng.choice(arrays)[0]
        new = self.fresh("v")
        self.vars[new] = ("prim", "int")
        self.stmts.append(f"        int {new} = {name}.length;")
        return True

    def build(self) -> str:
        rng = self.rng
        self.gen_classes()
        emitters = [
            (self.emit_prim_decl, 2),
            (self.emit_arr_decl, 2),
            (self.emit_obj_decl, 3),
            (self.emit_alias_decl, 2),
            (self.emit_null_decl, 1),
            (self.emit_local_assign, 2),
            (self.emit_field_assign, 2),
            (self.emit_cell_assign, 2),
            (self.emit_field_read, 2),
            (self.emit_cell_read, 1),
            (self.emit_length_read, 1),
        ]
        target = rng.randint(3, self.max_stmts)
        guard = 0
        while len(self.stmts) < target and guard < 400:
            guard += 1
            fns = [f for f, w in emitters for _ in range(w)]
            rng.choice(fns)()
        lines = _render_classes(self.classes)
        lines.append("class Main {")
        lines.append("    public static void main(String[] args) {")
        lines.extend(self.stmts)
        lines.append("    }")
        lines.append("}")
        return "\n".join(lines) + "\n"


def straightline(seed: int, max_stmts: int = 20, max_allocs: int = 12) -> str:
    return _StraightGen(random.Random(seed), max_stmts, max_allocs).build()


def allocating(seed: int, max_allocs: int = 10) -> str:
    """Straight-line program guaranteed to allocate at least once."""
    for bump in range(50):
        src = straightline(seed * 1000 + bump, max_stmts=14, max_allocs=max_allocs)
        if "new " in src:
            return src
    raise AssertionError("generator never allocated")


# --- richer programs for parse/print round-trips (never executed) ---


def _rich_expr(rng: random.Random, int_vars: list[str], depth: int) -> str:
    if depth <= 0 or rng.random() < 0.35:
        if int_vars and rng.random() < 0.5:
            return rng.choice(int_vars)
        return str(rng.randint(-20, 20))
    op = rng.choice(["+", "-", "*", "/", "%"])
    left = _rich_expr(rng, int_vars, depth - 1)
    right = _rich_expr(rng, int_vars, depth - 1)
    if rng.random() < 0.3:
        return f"-({left} {op} {right})"
    return f"{left} {op} {right}"


def _rich_cond(rng: random.Random, int_vars: list[str]) -> str:
    cmp_op = rng.choice(["<", "<=", ">", ">=", "==", "!="])
    a = _rich_expr(rng, int_vars, 1)
    b = _rich_expr(rng, int_vars, 1)
    cond = f"{a} {cmp_op} {b}"
    if rng.random() < 0.4:
        other = f"{_rich_expr(rng, int_vars, 1)} < {_rich_expr(rng, int_vars, 1)}"
        joiner = rng.choice(["&&", "||"])
        cond = f"{cond} {joiner} {other}"
    if rng.random() < 0.2:
        cond = f"!({cond})"
    return cond


def rich(seed: int) -> str:
    rng = random.Random(seed)
    lines = [
        "class Counter {",
        "    public int total;",
        "    public int step;",
        "",
        "    Counter(int total, int step) {",
        "        this.total = total;",
        "        this.step = step;",
        "    }",
        "",
        "    public int bump(int times) {",
        "        int i = 0;",
        "        while (i < times) {",
        "            total = total + step;",
        "            i = i + 1;",
        "        }",
        "        return total;",
        "    }",
        "",
        "    public void reset() {",
        "        total = 0;",
        "    }",
        "}",
        "",
        "class Main {",
        "    public static void main(String[] args) {",
    ]
    int_vars: list[str] = []
    for i in range(rng.randint(2, 5)):
        name = f"n{i}"
        lines.append(f"        int {name} = {_rich_expr(rng, int_vars, rng.randint(1, 3))};")
        int_vars.append(name)
    lines.append(f"        Counter c = new Counter({rng.randint(0, 9)}, {rng.randint(1, 5)});")
    for _ in range(rng.randint(1, 3)):
        kind = rng.choice(["if", "while", "call", "print"])
        if kind == "if":
            lines.append(f"        if ({_rich_cond(rng, int_vars)}) {{")
            lines.append(f"            {rng.choice(int_vars)} = {_rich_expr(rng, int_vars, 2)};")
            if rng.random() < 0.5:
                lines.append("        } else {")
                lines.append(f"            {rng.choice(int_vars)} = {_rich_expr(rng, int_vars, 2)};")
            lines.append("        }")
        elif kind == "while":
            guard = f"w{rng.randint(0, 99)}"
            lines.append(f"        int {guard} = 0;")
            lines.append(f"        while ({guard} < {rng.randint(1, 4)}) {{")
            lines.append(f"            {guard} = {guard} + 1;")
            lines.append("        }")
            int_vars.append(guard)
        elif kind == "call":
            lines.append(f"        int r{rng.randint(0, 99)} = c.bump({rng.randint(1, 3)});")
        else:
            lines.append(f"        System.out.println({_rich_expr(rng, int_vars, 2)});")
    lines.append(f'        System.out.println("done" + {rng.choice(int_vars)});')
    lines.append("    }")
    lines.append("}")
    return "\n".join(lines) + "\n"
