"""Local HTTP service for the web UI.

The trace is computed once at startup and served read-only; every request
handler works from immutable data, so the threading server needs no locks.

    GET  /api/trace                       trace JSON
    GET  /api/program                     source text
    GET  /api/diagram?step=K&format=svg   diagram (svg (default) or json)
    POST /api/grade  {"step": K, "answer": "<vpsd>"}   feedback report
    GET  /                                static UI bundle when configured
"""

from __future__ import annotations

import json
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .diagram import diagram_to_json, emit_svg, emit_trace_json, state_to_diagram
from .feedback import VpsdSyntaxError, compare, emit_vpsd, parse_vpsd, report_to_json
from .machine import Trace

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json",
    ".map": "application/json",
    ".svg": "image/svg+xml",
    ".png": "image/png",
    ".ico": "image/x-icon",
}

_FALLBACK_PAGE = """<!doctype html>
<html><head><title>vps serve</title></head>
<body><h1>vps serve</h1>
<p>No web UI bundle configured (start with --ui-dir to serve one).</p>
<ul>
<li><a href="/api/trace">/api/trace</a></li>
<li><a href="/api/program">/api/program</a></li>
<li><a href="/api/diagram?step=last">/api/diagram?step=last</a></li>
</ul></body></html>
"""


class VpsHandler(BaseHTTPRequestHandler):
    # set by make_server on the class
    trace: Trace = None  # type: ignore[assignment]
    trace_json: bytes = b""
    ui_dir: Path | None = None

    def log_message(self, format: str, *args) -> None:  # noqa: A002 - stdlib name
        pass

    # --- plumbing ---

    def _send(self, code: int, content_type: str, body: bytes) -> None:
        self.send_response(code)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, code: int, payload: dict) -> None:
        self._send(code, "application/json", json.dumps(payload).encode("utf-8"))

    def _bad(self, message: str, extra: dict | None = None) -> None:
        payload = {"error": message}
        if extra:
            payload.update(extra)
        self._send_json(400, payload)

    def _step_index(self, raw: str) -> int | None:
        last = len(self.trace.events) - 1
        if raw == "last":
            return last
        try:
            index = int(raw)
        except (TypeError, ValueError):
            self._bad(f"step must be an integer or 'last', got {raw!r}")
            return None
        if index < 0 or index > last:
            self._bad(f"step {index} out of range; valid range is 0..{last}")
            return None
        return index

    # --- routes ---

    def do_GET(self) -> None:  # noqa: N802 - stdlib casing
        url = urlparse(self.path)
        if url.path == "/api/trace":
            self._send(200, "application/json", self.trace_json)
            return
        if url.path == "/api/program":
            self._send(200, "text/plain; charset=utf-8",
                       self.trace.source_text.encode("utf-8"))
            return
        if url.path == "/api/diagram":
            query = parse_qs(url.query)
            step_raw = query.get("step", [None])[0]
            if step_raw is None:
                self._bad("missing 'step' query parameter")
                return
            index = self._step_index(step_raw)
            if index is None:
                return
            fmt = query.get("format", ["svg"])[0]
            diagram = state_to_diagram(self.trace.events[index].state)
            if fmt == "svg":
                self._send(200, "image/svg+xml", emit_svg(diagram).encode("utf-8"))
            elif fmt == "json":
                self._send_json(200, diagram_to_json(diagram))
            elif fmt == "vpsd":
                self._send(200, "text/plain; charset=utf-8", emit_vpsd(diagram).encode("utf-8"))
            else:
                self._bad(f"unknown format {fmt!r}; use svg, json, or vpsd")
            return
        if url.path.startswith("/api/"):
            self._send_json(404, {"error": "not found"})
            return
        self._serve_static(url.path)

    def do_POST(self) -> None:  # noqa: N802
        url = urlparse(self.path)
        if url.path != "/api/grade":
            self._send_json(404, {"error": "not found"})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
        except ValueError:
            length = 0
        try:
            body = json.loads(self.rfile.read(length).decode("utf-8") or "{}")
        except (json.JSONDecodeError, UnicodeDecodeError):
            self._bad("request body must be JSON")
            return
        if not isinstance(body, dict) or "step" not in body or "answer" not in body:
            self._bad("body must be {\"step\": K, \"answer\": \"<vpsd text>\"}")
            return
        index = self._step_index(str(body["step"]))
        if index is None:
            return
        if not isinstance(body["answer"], str):
            self._bad("'answer' must be a string")
            return
        try:
            answer = parse_vpsd(body["answer"])
        except VpsdSyntaxError as exc:
            self._bad(exc.message, {"line": exc.line})
            return
        reference = state_to_diagram(self.trace.events[index].state)
        report = compare(reference, answer)
        self._send_json(200, report_to_json(report))

    def _serve_static(self, raw_path: str) -> None:
        if self.ui_dir is None:
            if raw_path == "/":
                self._send(200, "text/html; charset=utf-8", _FALLBACK_PAGE.encode("utf-8"))
            else:
                self._send_json(404, {"error": "not found"})
            return
        rel = raw_path.lstrip("/") or "index.html"
        base = self.ui_dir.resolve()
        target = (base / rel).resolve()
        if base not in target.parents and target != base:
            self._send_json(404, {"error": "not found"})
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send_json(404, {"error": "not found"})
            return
        content_type = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
        self._send(200, content_type, target.read_bytes())


def make_server(trace: Trace, ui_dir: str | None = None, port: int = 7470,
                host: str = "127.0.0.1") -> ThreadingHTTPServer:
    """Build (but do not start) the HTTP server; raises OSError if the port is busy."""
    handler = type(
        "BoundVpsHandler",
        (VpsHandler,),
        {
            "trace": trace,
            "trace_json": emit_trace_json(trace).encode("utf-8"),
            "ui_dir": Path(ui_dir) if ui_dir else None,
        },
    )
    return ThreadingHTTPServer((host, port), handler)
