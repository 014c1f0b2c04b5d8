import json
import threading
import urllib.error
import urllib.request

import pytest

from helpers import run_corpus
from vps import emit_svg, emit_trace_json, parse_trace_json, state_to_diagram
from vps.diagram import diagram_from_json
from vps.server import make_server


@pytest.fixture(scope="module")
def served():
    trace = run_corpus("person_aliasing.mjv")
    httpd = make_server(trace, port=0)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{httpd.server_address[1]}"
    yield trace, base
    httpd.shutdown()
    httpd.server_close()


def get(base, path):
    try:
        with urllib.request.urlopen(base + path) as response:
            return response.status, response.read()
    except urllib.error.HTTPError as err:
        return err.code, err.read()


def post(base, path, payload):
    data = json.dumps(payload).encode()
    request = urllib.request.Request(
        base + path, data=data, headers={"Content-Type": "application/json"}
    )
    try:
        with urllib.request.urlopen(request) as response:
            return response.status, response.read()
    except urllib.error.HTTPError as err:
        return err.code, err.read()


def test_api_trace(served):
    trace, base = served
    status, body = get(base, "/api/trace")
    assert status == 200
    assert body.decode() == emit_trace_json(trace)
    parse_trace_json(body.decode())


def test_api_program(served):
    trace, base = served
    status, body = get(base, "/api/program")
    assert status == 200
    assert body.decode() == trace.source_text


def test_api_diagram_svg_matches_emitter(served):
    trace, base = served
    status, body = get(base, "/api/diagram?step=last")
    assert status == 200
    expected = emit_svg(state_to_diagram(trace.final_state))
    assert body.decode() == expected


def test_api_diagram_json(served):
    trace, base = served
    status, body = get(base, "/api/diagram?step=2&format=json")
    assert status == 200
    diagram = diagram_from_json(json.loads(body))
    assert diagram == state_to_diagram(trace.events[2].state)


def test_api_diagram_vpsd(served):
    trace, base = served
    status, body = get(base, "/api/diagram?step=last&format=vpsd")
    assert status == 200
    from vps.feedback import emit_vpsd

    assert body.decode() == emit_vpsd(state_to_diagram(trace.final_state))


def test_api_diagram_bad_requests(served):
    _trace, base = served
    status, body = get(base, "/api/diagram?step=99")
    assert status == 400
    assert "valid range is 0..6" in json.loads(body)["error"]
    status, _ = get(base, "/api/diagram?step=abc")
    assert status == 400
    status, _ = get(base, "/api/diagram?step=1&format=gif")
    assert status == 400
    status, _ = get(base, "/api/diagram")
    assert status == 400


def test_api_grade_correct(served):
    _trace, base = served
    answer = (
        "frame main\nref ref_p -> @a\nref ref2 -> @a\nheap\n"
        '@a Person { rut = "000", edad = 56 }\n'
    )
    status, body = post(base, "/api/grade", {"step": "last", "answer": answer})
    assert status == 200
    doc = json.loads(body)
    assert doc["equivalent"] is True and doc["score"] == 1.0


def test_api_grade_wrong(served):
    _trace, base = served
    answer = (
        "frame main\nref ref_p -> @a\nref ref2 -> @a\nheap\n"
        '@a Person { rut = "234", edad = 56 }\n'
    )
    status, body = post(base, "/api/grade", {"step": "last", "answer": answer})
    assert status == 200
    doc = json.loads(body)
    assert doc["equivalent"] is False
    assert doc["discrepancies"][0]["kind"] == "WrongPrimitiveValue"


def test_api_grade_malformed_answer_400_with_line(served):
    _trace, base = served
    status, body = post(base, "/api/grade", {"step": "last", "answer": "frame\nheap\n"})
    assert status == 400
    doc = json.loads(body)
    assert doc["line"] == 1
    status, _ = post(base, "/api/grade", {"answer": "x"})
    assert status == 400
    status, _ = post(base, "/api/grade", {"step": 0, "answer": 5})
    assert status == 400


def test_unknown_paths_404(served):
    _trace, base = served
    status, _ = get(base, "/api/nothing")
    assert status == 404
    status, _ = get(base, "/nothing.html")
    assert status == 404


def test_fallback_index_page(served):
    _trace, base = served
    status, body = get(base, "/")
    assert status == 200
    assert b"vps serve" in body


def test_concurrent_requests(served):
    _trace, base = served
    results = []

    def fetch():
        results.append(get(base, "/api/diagram?step=last")[0])

    threads = [threading.Thread(target=fetch) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert results == [200] * 8


def test_static_ui_dir(tmp_path):
    (tmp_path / "index.html").write_text("<html>ui</html>")
    assets = tmp_path / "assets"
    assets.mkdir()
    (assets / "app.js").write_text("console.log(1)")
    trace = run_corpus("array_aliasing.mjv")
    httpd = make_server(trace, ui_dir=str(tmp_path), port=0)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{httpd.server_address[1]}"
    try:
        status, body = get(base, "/")
        assert status == 200 and b"ui" in body
        status, body = get(base, "/assets/app.js")
        assert status == 200 and b"console" in body
        status, _ = get(base, "/../secret")
        assert status in (400, 404)
        status, _ = get(base, "/missing.css")
        assert status == 404
        # API still works with a UI directory configured
        status, _ = get(base, "/api/trace")
        assert status == 200
    finally:
        httpd.shutdown()
        httpd.server_close()


def test_port_conflict_raises():
    trace = run_corpus("array_aliasing.mjv")
    first = make_server(trace, port=0)
    busy_port = first.server_address[1]
    try:
        with pytest.raises(OSError):
            make_server(trace, port=busy_port)
    finally:
        first.server_close()
