"""Stateless HTTP front end for the seed pipeline.

Endpoints:
  GET  /api/health  -> {"status": "ok"}
  POST /api/seed    -> seed document for a job description
  POST /api/mutate  -> mutated copy of a posted seed document

Every request is an independent pure computation: the full seed state
travels in the request body, so the service keeps no sessions and can
answer concurrent requests from the threaded server.  Malformed bodies
get a 400 with a machine-readable error; well-formed but invalid inputs
(v not below w, frozen vertex, non-reduced word) get a 422.
"""

import json
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .cli import (
    DomainError,
    JobError,
    build_seed_document,
    document_bytes,
    job_from_mapping,
    mutate_document,
)

_MAX_BODY = 4 * 1024 * 1024


class _Handler(BaseHTTPRequestHandler):
    server_version = "richardson/1.0"

    def log_message(self, fmt, *args):  # keep test output quiet
        if getattr(self.server, "verbose", False):
            BaseHTTPRequestHandler.log_message(self, fmt, *args)

    # -- plumbing --------------------------------------------------------------

    def _send(self, code, payload, raw=None):
        body = raw if raw is not None else \
            (json.dumps(payload) + "\n").encode("utf-8")
        self.send_response(code)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _error(self, code, message):
        self._send(code, {"error": message})

    def _read_json(self):
        length = self.headers.get("Content-Length")
        if length is None:
            raise JobError("missing Content-Length")
        try:
            length = int(length)
        except ValueError:
            raise JobError("bad Content-Length") from None
        if not 0 <= length <= _MAX_BODY:
            raise JobError("request body too large")
        raw = self.rfile.read(length)
        try:
            return json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as err:
            raise JobError("request body is not JSON: %s" % err) from None

    # -- endpoints -------------------------------------------------------------

    def do_GET(self):
        if self.path == "/api/health":
            self._send(200, {"status": "ok"})
        else:
            self._error(404, "no such endpoint: %s" % self.path)

    def do_POST(self):
        try:
            if self.path == "/api/seed":
                payload = self._read_json()
                doc = build_seed_document(job_from_mapping(payload))
                self._send(200, None, document_bytes(doc).encode("utf-8"))
            elif self.path == "/api/mutate":
                payload = self._read_json()
                doc, vertices = _mutate_request(payload)
                out = mutate_document(doc, vertices)
                self._send(200, None, document_bytes(out).encode("utf-8"))
            else:
                self._error(404, "no such endpoint: %s" % self.path)
        except JobError as err:
            self._error(400, str(err))
        except DomainError as err:
            self._error(422, str(err))
        except Exception as err:  # computation bug: fail loudly, not silently
            self._error(500, "internal error: %s" % err)


def _mutate_request(payload):
    if not isinstance(payload, dict):
        raise JobError("request body must be a JSON object")
    unknown = set(payload) - {"seed", "vertex", "vertices"}
    if unknown:
        raise JobError("unknown fields: %s" % ", ".join(sorted(unknown)))
    if "seed" not in payload or not isinstance(payload["seed"], dict):
        raise JobError("field 'seed' (a seed document) is required")
    if ("vertex" in payload) == ("vertices" in payload):
        raise JobError("exactly one of 'vertex' or 'vertices' is required")
    if "vertex" in payload:
        vertices = [payload["vertex"]]
    else:
        vertices = payload["vertices"]
        if not isinstance(vertices, list):
            raise JobError("field 'vertices' must be a list")
    for k in vertices:
        if not isinstance(k, int) or isinstance(k, bool):
            raise JobError("vertex ids must be integers")
    return payload["seed"], vertices


def create_server(port=0, host="127.0.0.1"):
    """A ready-to-run threaded server; port 0 picks a free port."""
    return ThreadingHTTPServer((host, port), _Handler)


def serve(port=8765, host="127.0.0.1"):
    server = create_server(port, host)
    server.verbose = True
    print("listening on http://%s:%d" % (host, server.server_address[1]))
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


if __name__ == "__main__":
    serve()
