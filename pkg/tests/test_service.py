"""HTTP service: endpoints, status codes, byte identity with the CLI."""

import json
import threading
import urllib.error
import urllib.request
from pathlib import Path

import pytest

try:
    import jsonschema
except ImportError:  # pragma: no cover
    jsonschema = None

from richardson import cli
from richardson.service import create_server

BIG_JOB = {
    "type": "A5",
    "v": "s1 s2 s1 s4 s5 s4",
    "w": "s1 s3 s5 s2 s4 s1 s3 s5 s2 s4 s1 s3 s5 s4",
    "word": "s1 s3 s5 s2 s4 s1 s3 s5 s2 s4 s1 s3 s5 s4",
}

DOCS = Path(__file__).resolve().parent.parent / "docs"


@pytest.fixture(scope="module")
def base_url():
    server = create_server(0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield "http://127.0.0.1:%d" % server.server_address[1]
    server.shutdown()
    server.server_close()


def call(base, path, payload=None, raw=None):
    data = raw if raw is not None else (
        json.dumps(payload).encode("utf-8") if payload is not None else None)
    req = urllib.request.Request(base + path, data=data)
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, resp.read()
    except urllib.error.HTTPError as err:
        return err.code, err.read()


def test_health(base_url):
    code, body = call(base_url, "/api/health")
    assert code == 200
    assert json.loads(body) == {"status": "ok"}


def test_seed_document_for_the_eight_vertex_example(base_url):
    code, body = call(base_url, "/api/seed", BIG_JOB)
    assert code == 200
    text = body.decode("utf-8")
    assert text.count('"frozen": true') == 5
    assert text.count('"frozen": false') == 3
    doc = json.loads(text)
    assert doc["counts"]["vertices"] == 8


def test_service_and_cli_produce_identical_bytes(base_url):
    _, body = call(base_url, "/api/seed", BIG_JOB)
    job = dict(BIG_JOB)
    job["seed_rng"] = None
    cli_text = cli.cmd_seed(job)
    assert cli_text.encode("utf-8") == body


def test_mutate_and_undo_restore_the_document_bytes(base_url):
    _, body = call(base_url, "/api/seed", BIG_JOB)
    doc = json.loads(body)
    code, once = call(base_url, "/api/mutate", {"seed": doc, "vertex": 3})
    assert code == 200
    assert once != body
    code, twice = call(base_url, "/api/mutate",
                       {"seed": json.loads(once), "vertex": 3})
    assert code == 200
    assert twice == body


def test_mutate_accepts_a_vertex_list(base_url):
    _, body = call(base_url, "/api/seed", BIG_JOB)
    doc = json.loads(body)
    code, out = call(base_url, "/api/mutate",
                     {"seed": doc, "vertices": [3, 7, 7, 3]})
    assert code == 200
    assert out == body


def test_malformed_requests_get_400(base_url):
    code, body = call(base_url, "/api/seed", raw=b"{not json")
    assert code == 400 and "error" in json.loads(body)
    code, body = call(base_url, "/api/seed", payload=["list"])
    assert code == 400
    code, body = call(base_url, "/api/seed", payload={"type": "A2"})
    assert code == 400
    code, body = call(base_url, "/api/mutate", payload={"vertex": 3})
    assert code == 400
    code, body = call(base_url, "/api/mutate",
                      payload={"seed": {}, "vertex": 1, "vertices": [1]})
    assert code == 400
    code, body = call(base_url, "/api/mutate",
                      payload={"seed": {}, "vertex": 1})
    assert code == 400  # empty seed document is malformed


def test_domain_violations_get_422(base_url):
    code, body = call(base_url, "/api/seed",
                      {"type": "A3", "v": "s1 s2 s1", "w": "s1"})
    assert code == 422 and "error" in json.loads(body)
    _, seed_body = call(base_url, "/api/seed", BIG_JOB)
    doc = json.loads(seed_body)
    code, body = call(base_url, "/api/mutate", {"seed": doc, "vertex": 10})
    assert code == 422  # frozen
    code, body = call(base_url, "/api/mutate", {"seed": doc, "vertex": 99})
    assert code == 422  # absent


def test_unknown_endpoints_get_404(base_url):
    code, body = call(base_url, "/api/nope")
    assert code == 404
    code, body = call(base_url, "/api/nope", payload={})
    assert code == 404


def test_concurrent_requests_are_independent(base_url):
    _, body = call(base_url, "/api/seed", BIG_JOB)
    doc = json.loads(body)
    results = {}

    def worker(k):
        results[k] = call(base_url, "/api/mutate", {"seed": doc, "vertex": k})

    threads = [threading.Thread(target=worker, args=(k,)) for k in (3, 7, 8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for k in (3, 7, 8):
        code, out = results[k]
        assert code == 200
        mutated = json.loads(out)
        pos = [v["id"] for v in doc["vertices"]].index(k)
        assert mutated["variables"][pos] != "x%d" % k


# -- published schemas --------------------------------------------------------------


@pytest.mark.skipif(jsonschema is None, reason="jsonschema not installed")
def test_documents_validate_against_the_published_schema(base_url):
    schema = json.loads((DOCS / "seed-document.schema.json").read_text())
    _, body = call(base_url, "/api/seed", BIG_JOB)
    doc = json.loads(body)
    jsonschema.validate(doc, schema)
    _, out = call(base_url, "/api/mutate", {"seed": doc, "vertex": 3})
    jsonschema.validate(json.loads(out), schema)
    other = cli.build_seed_document(
        {"type": "D4", "v": "", "w": "s1 s2", "word": None, "seed_rng": 5})
    jsonschema.validate(other, schema)


@pytest.mark.skipif(jsonschema is None, reason="jsonschema not installed")
def test_requests_validate_against_the_published_schemas(base_url):
    seed_schema = json.loads((DOCS / "seed-request.schema.json").read_text())
    jsonschema.validate(BIG_JOB, seed_schema)
    jsonschema.validate({"type": "A2", "w": "s1"}, seed_schema)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"type": "A2"}, seed_schema)
    mutate_schema = json.loads((DOCS / "mutate-request.schema.json").read_text())
    # the seed-document schema is exercised on its own above; here the
    # reference is flattened so the envelope can be checked standalone
    mutate_schema["properties"]["seed"] = {"type": "object"}
    _, body = call(base_url, "/api/seed", BIG_JOB)
    jsonschema.validate({"seed": json.loads(body), "vertex": 3}, mutate_schema)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"vertex": 3}, mutate_schema)
