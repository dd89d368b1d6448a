"""In-process stub completion server implementing the LM wire contract.

Serves canned completions and next-token probabilities from lookup
tables; used by the test suite and as a reference implementation of the
endpoint an actual model server must provide.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer


class StubModel:
    """Table-backed responder: goal prompt -> completions / P-probability."""

    def __init__(self, completions: dict[str, list[tuple[str, float]]] | None = None,
                 outcomes: dict[str, float] | None = None,
                 default_outcome: float = 0.5):
        self.completions = completions or {}
        self.outcomes = outcomes or {}
        self.default_outcome = default_outcome

    def complete(self, prompt: str, n: int, temperature: float):
        if prompt.startswith("GOAL ") and prompt.endswith(" PROOFSTEP"):
            goal = prompt[len("GOAL "):-len(" PROOFSTEP")]
            return [{"text": " " + t, "total_logprob": lp}
                    for t, lp in self.completions.get(goal, [])[:n]]
        return []

    def next_token_probs(self, prompt: str):
        if prompt.startswith("GOAL ") and prompt.endswith(" OUTCOME "):
            goal = prompt[len("GOAL "):-len(" OUTCOME ")]
            p = self.outcomes.get(goal, self.default_outcome)
            return {"P": p, "N": 1.0 - p}
        return {}


def _make_handler(model: StubModel):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, *args):
            pass

        def _reply(self, code: int, payload: dict):
            body = json.dumps(payload).encode()
            self.send_response(code)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def do_POST(self):
            length = int(self.headers.get("Content-Length", 0))
            try:
                body = json.loads(self.rfile.read(length) or b"{}")
            except json.JSONDecodeError:
                self._reply(400, {"error": "bad json"})
                return
            if self.path == "/v1/complete":
                choices = model.complete(body.get("prompt", ""),
                                         int(body.get("n", 1)),
                                         float(body.get("temperature", 1.0)))
                self._reply(200, {"choices": choices})
            elif self.path == "/v1/score":
                probs = model.next_token_probs(body.get("prompt", ""))
                self._reply(200, {"next_token_probs": probs})
            else:
                self._reply(404, {"error": f"unknown path {self.path}"})

    return Handler


class StubServer:
    """Threaded HTTP server around a StubModel; context-manager friendly."""

    def __init__(self, model: StubModel, host: str = "127.0.0.1", port: int = 0):
        self.server = ThreadingHTTPServer((host, port), _make_handler(model))
        self.thread = threading.Thread(target=self.server.serve_forever,
                                       daemon=True)

    @property
    def url(self) -> str:
        host, port = self.server.server_address[:2]
        return f"http://{host}:{port}"

    def __enter__(self):
        self.thread.start()
        return self

    def __exit__(self, *exc):
        self.server.shutdown()
        self.server.server_close()
        return False
