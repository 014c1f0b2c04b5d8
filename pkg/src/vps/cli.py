"""Command line: parse, trace, render, grade, serve.

Exit codes are a stable contract: 0 success (or an equivalent grade),
1 well-formed but non-equivalent grade, 2 user-input error (bad source,
bad step, malformed answer), 3 environment or I/O error.
"""

from __future__ import annotations

import json
import os
import sys

import click

from .diagram import diagram_to_json, emit_dot, emit_svg, emit_trace_json, state_to_diagram
from .feedback import VpsdSyntaxError, compare, parse_vpsd, report_to_json
from .lang import LexError, ParseError, ValidationFailure, ast_to_dict, parse_program, validate
from .machine import DEFAULT_MAX_STEPS, Trace, run_to_end
from .server import make_server

ENV_MAX_STEPS = "VPS_MAX_STEPS"


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        click.echo(f"error: cannot read {path}: {exc.strerror}", err=True)
        sys.exit(3)


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=False)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        click.echo(f"error: cannot write {out}: {exc.strerror}", err=True)
        sys.exit(3)


def _load_program(path: str):
    source = _read_file(path)
    try:
        program = parse_program(source)
    except (LexError, ParseError) as exc:
        click.echo(f"{path}:{exc.line}:{exc.column}: {exc.message}")
        sys.exit(2)
    try:
        validate(program)
    except ValidationFailure as exc:
        for err in exc.errors:
            click.echo(f"{path}:{err.line}:{err.column}: {err.message}")
        sys.exit(2)
    return source, program


def _budget(flag_value: int | None) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get(ENV_MAX_STEPS)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            click.echo(f"error: {ENV_MAX_STEPS} must be an integer, got {env!r}", err=True)
            sys.exit(2)
    return DEFAULT_MAX_STEPS


def _pick_step(trace: Trace, step: str) -> int:
    last = len(trace.events) - 1
    if step == "last":
        return last
    try:
        index = int(step)
    except ValueError:
        click.echo(f"error: step must be an integer or 'last', got {step!r}", err=True)
        sys.exit(2)
    if index < 0 or index > last:
        click.echo(f"error: step {index} out of range; valid range is 0..{last}", err=True)
        sys.exit(2)
    return index


@click.group()
@click.version_option(package_name="vps", prog_name="vps")
def main() -> None:
    """Visual program simulation: run MiniJava-VPS on a notional machine."""


@main.command("parse")
@click.argument("file", metavar="FILE")
def cmd_parse(file: str) -> None:
    """Parse and validate FILE; print its AST as JSON."""
    _source, program = _load_program(file)
    click.echo(json.dumps(ast_to_dict(program), indent=2))


@main.command("trace")
@click.argument("file", metavar="FILE")
@click.option("--max-steps", type=click.IntRange(min=1), default=None,
              help=f"Step budget (default {DEFAULT_MAX_STEPS}; ${ENV_MAX_STEPS} overrides).")
@click.option("-o", "--out", type=click.Path(dir_okay=False), default=None,
              help="Write the trace JSON here instead of standard output.")
def cmd_trace(file: str, max_steps: int | None, out: str | None) -> None:
    """Execute FILE and emit its full trace as JSON.

    A runtime error inside the program is data, not a failure: the trace
    ends with an error event and the command still exits 0.
    """
    source, program = _load_program(file)
    trace = run_to_end(program, max_steps=_budget(max_steps), source_text=source)
    _write_output(emit_trace_json(trace), out)


@main.command("render")
@click.argument("file", metavar="FILE")
@click.option("--step", required=True, help="Event index, or 'last'.")
@click.option("--format", "fmt", type=click.Choice(["dot", "svg", "json"]), default="svg",
              show_default=True)
@click.option("-o", "--out", type=click.Path(dir_okay=False), default=None)
def cmd_render(file: str, step: str, fmt: str, out: str | None) -> None:
    """Render the diagram of one step of FILE's execution."""
    source, program = _load_program(file)
    trace = run_to_end(program, max_steps=_budget(None), source_text=source)
    index = _pick_step(trace, step)
    diagram = state_to_diagram(trace.events[index].state)
    if fmt == "dot":
        _write_output(emit_dot(diagram), out)
    elif fmt == "svg":
        _write_output(emit_svg(diagram), out)
    else:
        _write_output(json.dumps(diagram_to_json(diagram), indent=2) + "\n", out)


@main.command("grade")
@click.argument("file", metavar="FILE")
@click.option("--step", required=True, help="Event index, or 'last'.")
@click.option("--answer", "answer_path", required=True, type=click.Path(dir_okay=False),
              help="Student answer in VPS-D format.")
def cmd_grade(file: str, step: str, answer_path: str) -> None:
    """Grade a VPS-D answer against the machine's diagram at a step."""
    source, program = _load_program(file)
    answer_text = _read_file(answer_path)
    trace = run_to_end(program, max_steps=_budget(None), source_text=source)
    index = _pick_step(trace, step)
    try:
        answer = parse_vpsd(answer_text)
    except VpsdSyntaxError as exc:
        click.echo(f"{answer_path}:{exc.line}: {exc.message}", err=True)
        sys.exit(2)
    reference = state_to_diagram(trace.events[index].state)
    report = compare(reference, answer)
    click.echo(json.dumps(report_to_json(report), indent=2))
    sys.exit(0 if report.equivalent else 1)


@main.command("serve")
@click.argument("file", metavar="FILE")
@click.option("--port", type=int, default=7470, show_default=True)
@click.option("--ui-dir", type=click.Path(file_okay=False), default=None,
              help="Static web UI bundle to serve at /.")
def cmd_serve(file: str, port: int, ui_dir: str | None) -> None:
    """Serve FILE's trace, diagrams, and grading over local HTTP."""
    source, program = _load_program(file)
    trace = run_to_end(program, max_steps=_budget(None), source_text=source)
    try:
        httpd = make_server(trace, ui_dir=ui_dir, port=port)
    except OSError as exc:
        click.echo(f"error: cannot listen on port {port}: {exc.strerror}", err=True)
        sys.exit(3)
    host, actual_port = httpd.server_address[:2]
    click.echo(f"serving {file} on http://{host}:{actual_port}/ (Ctrl-C stops)")
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()


if __name__ == "__main__":
    main()
