"""Local OAI-PMH endpoint serving canned ListRecords responses from fixtures/oai."""

from __future__ import annotations

import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

FIXTURES = Path(__file__).parent / "fixtures" / "oai"

# scenario -> (first page, {resumptionToken: page})
SCENARIOS = {
    "two-page": ("page1.xml", {"page2": "page2.xml"}),
    "single": ("single.xml", {}),
    "bad-argument": ("bad_argument.xml", {}),
    "one-bad-record": ("one_bad_record.xml", {}),
}


class StubServer:
    """``with StubServer("two-page") as url: ...``

    ``fail_first`` makes the first N requests answer 503 to exercise retries.
    """

    def __init__(self, scenario: str, fail_first: int = 0):
        self.scenario = scenario
        self.fail_first = fail_first
        self.requests: list[dict] = []
        stub = self

        class Handler(BaseHTTPRequestHandler):
            def do_GET(self):
                query = {k: v[0] for k, v in parse_qs(urlparse(self.path).query).items()}
                stub.requests.append(query)
                if len(stub.requests) <= stub.fail_first:
                    self.send_response(503)
                    self.end_headers()
                    return
                first, pages = SCENARIOS[stub.scenario]
                token = query.get("resumptionToken")
                name = pages.get(token) if token else first
                if name is None:
                    body = (FIXTURES / "bad_argument.xml").read_bytes().replace(b"badArgument", b"badResumptionToken")
                else:
                    body = (FIXTURES / name).read_bytes()
                self.send_response(200)
                self.send_header("Content-Type", "text/xml; charset=utf-8")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)

            def log_message(self, *args):
                pass

        self._server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self._thread = threading.Thread(target=self._server.serve_forever, args=(0.02,), daemon=True)

    @property
    def url(self) -> str:
        host, port = self._server.server_address[:2]
        return f"http://{host}:{port}/oai"

    def __enter__(self) -> "StubServer":
        self._thread.start()
        return self

    def __exit__(self, *exc):
        self._server.shutdown()
        self._server.server_close()
