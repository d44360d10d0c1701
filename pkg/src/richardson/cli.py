"""Command line for the stratum toolkit, plus the shared document builders.

The ``seed`` command runs the full pipeline (Weyl data, tilting module,
quiver, bracket matrix, minor labels) and prints one JSON document; the
``mutate`` command transforms such a document; ``verify`` runs the named
check suites; ``serve`` starts the HTTP service.  The service reuses the
builders here, so command line and HTTP output are byte-identical.
"""

import argparse
import json
import sys

from . import cluster, minors, verify
from .strata import (
    categorical_mutation,
    category_spec,
    gabriel_quiver,
    initial_tilting,
    poisson_matrix,
)
from .weyl import (
    ReducedWord,
    dynkin,
    parse_word,
    parse_word_element,
    reduced_word,
    word_str,
)


class JobError(ValueError):
    """Malformed request: unreadable flags, words, or documents."""


class DomainError(ValueError):
    """Well-formed but invalid input: v not below w, frozen vertex, ..."""


# -- job parsing -------------------------------------------------------------------


def parse_type(text):
    text = text.strip().upper()
    if len(text) < 2 or text[0] not in "ADE" or not text[1:].isdigit():
        raise JobError("type must look like A3, D4 or E6; got %r" % text)
    kind, rank = text[0], int(text[1:])
    try:
        return dynkin(kind, rank)
    except ValueError as err:
        raise JobError(str(err)) from None


def job_from_mapping(payload):
    """JobSpec out of a JSON object (the /api/seed request body)."""
    if not isinstance(payload, dict):
        raise JobError("request body must be a JSON object")
    unknown = set(payload) - {"type", "v", "w", "word", "seed_rng"}
    if unknown:
        raise JobError("unknown fields: %s" % ", ".join(sorted(unknown)))
    if "type" not in payload or "w" not in payload:
        raise JobError("fields 'type' and 'w' are required")
    for key in ("type", "v", "w", "word"):
        if key in payload and payload[key] is not None \
                and not isinstance(payload[key], str):
            raise JobError("field %r must be a string" % key)
    seed_rng = payload.get("seed_rng")
    if seed_rng is not None and not isinstance(seed_rng, int):
        raise JobError("field 'seed_rng' must be an integer")
    return {
        "type": payload["type"],
        "v": payload.get("v") or "",
        "w": payload["w"],
        "word": payload.get("word") or None,
        "seed_rng": seed_rng,
    }


def _resolve(job):
    diagram = parse_type(job["type"])
    try:
        v = parse_word_element(diagram, job["v"])
        if job["word"]:
            word = ReducedWord(diagram, parse_word(diagram, job["word"]))
            w = word.product()
            if job["w"].strip():
                if parse_word_element(diagram, job["w"]) != w:
                    raise DomainError("-w and -i disagree about the element")
        else:
            w = parse_word_element(diagram, job["w"])
            word = reduced_word(w)
        if not word.is_reduced():
            raise DomainError("the word -i is not reduced")
    except DomainError:
        raise
    except (ValueError, IndexError) as err:
        raise JobError(str(err)) from None
    try:
        spec = category_spec(diagram, v, w, word)
    except ValueError as err:
        raise DomainError(str(err)) from None
    return spec


# -- documents ---------------------------------------------------------------------


def _compact(subset):
    if all(t <= 9 for t in subset):
        return "".join(str(t) for t in subset)
    return ".".join(str(t) for t in subset)


def _reduce_subsets(rows, cols):
    """Strip common prefixes and suffixes of the sorted index sets.

    On upper unitriangular points a common prefix (resp. suffix) block of
    the submatrix is unitriangular with zeros below (resp. above), so the
    minor equals the minor of the stripped pair.  This recovers the short
    display form, e.g. rows 123 / cols 125 -> rows 3 / cols 5.
    """
    rows, cols = list(rows), list(cols)
    changed = True
    while changed and rows and cols:
        changed = False
        while rows and cols and rows[0] == cols[0]:
            rows.pop(0), cols.pop(0)
            changed = True
        while rows and cols and rows[-1] == cols[-1]:
            rows.pop(), cols.pop()
            changed = True
    return tuple(rows), tuple(cols)


def minor_label(spec_pair):
    rows, cols = _reduce_subsets(spec_pair.rows, spec_pair.cols)
    if not rows:
        rows, cols = spec_pair.rows, spec_pair.cols
    return "D(%s,%s)" % (_compact(rows), _compact(cols))


def build_seed_document(job):
    """Run the pipeline for a JobSpec mapping and emit the seed document."""
    spec = _resolve(job)
    tilting = initial_tilting(spec)
    quiver = gabriel_quiver(tilting)
    seed = cluster.Seed.from_quiver(quiver)
    lam = poisson_matrix(tilting)
    warnings = []
    labels = {}
    if spec.diagram.kind == "A":
        labels = {j: minor_label(ms)
                  for j, ms in minors.initial_minor_specs(spec.v, spec.word)}
    else:
        warnings.append(
            "minor labels omitted: the evaluation layer covers type A only")
    shape = cluster.detect_type(seed)
    vertices = []
    for j in seed.ids:
        vertices.append({
            "id": j,
            "frozen": j in tilting.frozen,
            "label": labels.get(j, ""),
            "dim": list(tilting.summands[j].dims),
        })
    doc = {
        "meta": {
            "diagram": "%s%d" % (spec.diagram.kind, spec.diagram.rank),
            "v": word_str(reduced_word(spec.v).letters),
            "w": word_str(spec.word.letters),
            "word": word_str(spec.word.letters),
            "seed_rng": job.get("seed_rng"),
            "mutable_type": "%s%d" % shape if shape else None,
        },
        "counts": {
            "vertices": len(seed.ids),
            "frozen": len(tilting.frozen),
            "mutable": len(seed.ids) - len(tilting.frozen),
        },
        "warnings": warnings,
        "vertices": vertices,
        "arrows": _arrows_of(seed.b, seed.ids),
        "variables": list(seed.variable_strings()),
        "lambda": [list(row) for row in lam],
    }
    return doc


def _arrows_of(b, ids):
    out = []
    n = len(ids)
    for a in range(n):
        for t in range(n):
            if b[a][t] > 0:
                out.append([ids[a], ids[t], b[a][t]])
    return out


def seed_from_document(doc):
    """Rebuild the engine seed (and bracket matrix) from a document."""
    try:
        vertices = doc["vertices"]
        ids = tuple(entry["id"] for entry in vertices)
        frozen = tuple(entry["id"] for entry in vertices if entry["frozen"])
        n = len(ids)
        pos = {j: t for t, j in enumerate(ids)}
        b = [[0] * n for _ in range(n)]
        for src, dst, mult in doc["arrows"]:
            b[pos[src]][pos[dst]] += mult
            b[pos[dst]][pos[src]] -= mult
        names = tuple("x%d" % j for j in ids)
        variables = tuple(
            cluster.parse_laurent(text, names) for text in doc["variables"])
        lam = [list(row) for row in doc["lambda"]]
        seed = cluster.Seed(ids, frozen, tuple(tuple(r) for r in b), variables)
    except (KeyError, TypeError, IndexError) as err:
        raise JobError("seed document is malformed: %s" % err) from None
    except ValueError as err:
        raise JobError("seed document is malformed: %s" % err) from None
    return seed, lam


def mutate_document(doc, vertices, categorical=False):
    """Apply a mutation sequence to a seed document."""
    seed, lam = seed_from_document(doc)
    if categorical:
        _categorical_replay(doc, vertices)
    for j in vertices:
        if j not in seed.ids:
            raise DomainError("no vertex %r in this seed" % (j,))
        if j in seed.frozen:
            raise DomainError("vertex %r is frozen" % (j,))
        lam = cluster.mutate_lambda(lam, seed.b, seed.position(j))
        seed = seed.mutate(j)
    out = dict(doc)
    out["arrows"] = _arrows_of(seed.b, seed.ids)
    out["variables"] = list(seed.variable_strings())
    out["lambda"] = lam
    return out


def _categorical_replay(doc, vertices):
    """Mutate the tilting module alongside and compare exchange matrices."""
    formal = ["x%d" % entry["id"] for entry in doc["vertices"]]
    if doc["variables"] != formal:
        raise DomainError(
            "--categorical replays from the initial seed; this document "
            "was already mutated")
    job = {"type": doc["meta"]["diagram"], "v": doc["meta"]["v"],
           "w": doc["meta"]["w"], "word": doc["meta"]["word"],
           "seed_rng": None}
    spec = _resolve(job)
    tilting = initial_tilting(spec)
    seed = cluster.Seed.from_quiver(gabriel_quiver(tilting))
    mutable = set(seed.mutable_ids)
    for j in vertices:
        if j not in mutable:
            raise DomainError("vertex %r is frozen" % (j,))
        report = categorical_mutation(tilting, j)
        tilting = report.tilting
        seed = seed.mutate(j)
        b_cat = gabriel_quiver(tilting).to_b_matrix()
        n = len(seed.ids)
        for a in range(n):
            for t in range(n):
                if seed.ids[a] in mutable or seed.ids[t] in mutable:
                    if b_cat[a][t] != seed.b[a][t]:
                        raise RuntimeError(
                            "categorical and combinatorial mutation disagree "
                            "at vertex %r" % (j,))


def document_bytes(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def document_to_dot(doc):
    """GraphViz rendering of the seed's quiver."""
    lines = ["digraph seed {"]
    for entry in doc["vertices"]:
        shape = "box" if entry["frozen"] else "ellipse"
        label = entry["label"] or "x%d" % entry["id"]
        lines.append('  v%d [shape=%s, label="%d: %s"];'
                     % (entry["id"], shape, entry["id"], label))
    for src, dst, mult in doc["arrows"]:
        suffix = ' [label="%d"]' % mult if mult > 1 else ""
        lines.append("  v%d -> v%d%s;" % (src, dst, suffix))
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- commands ----------------------------------------------------------------------


def cmd_seed(job, fmt="json"):
    doc = build_seed_document(job)
    if fmt == "dot":
        return document_to_dot(doc)
    return document_bytes(doc)


def cmd_mutate(doc, vertices, categorical=False):
    return document_bytes(mutate_document(doc, vertices, categorical))


def cmd_verify(suites, seed_rng=0):
    results = []
    for name in suites:
        results.extend(verify.run_suite(name, seed_rng))
    failed = sum(1 for r in results if not r.passed)
    return verify.format_report(results) + "\n", failed


# -- argument parsing ---------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="richardson",
        description="Cluster structures on open Richardson strata: initial "
                    "seeds, mutation, verification suites, HTTP service.")
    sub = parser.add_subparsers(dest="command", required=True)

    seed = sub.add_parser("seed", help="emit the initial seed document")
    seed.add_argument("-t", "--type", required=True,
                      help="Dynkin type, e.g. A3")
    seed.add_argument("-v", default="", help="reduced word for v "
                      "(whitespace-separated s<i> tokens; empty = identity)")
    seed.add_argument("-w", default="", help="reduced word for w")
    seed.add_argument("-i", "--word", default=None,
                      help="explicit reduced word of w used for indexing")
    seed.add_argument("--seed-rng", type=int, default=None)
    seed.add_argument("--format", choices=("json", "dot"), default="json")

    mut = sub.add_parser("mutate", help="mutate a seed document")
    mut.add_argument("file", help="seed JSON path, or - for stdin")
    mut.add_argument("vertices", nargs="*", type=int,
                     help="vertex ids to mutate at, in order")
    mut.add_argument("--categorical", action="store_true",
                     help="also mutate the tilting module and compare")

    ver = sub.add_parser("verify", help="run named check suites")
    ver.add_argument("suites", nargs="*", metavar="SUITE",
                     help="suites to run (default: all of %s)"
                          % ", ".join(verify.SUITE_NAMES))
    ver.add_argument("--seed-rng", type=int, default=0)

    srv = sub.add_parser("serve", help="start the HTTP service")
    srv.add_argument("--port", type=int, default=8765)
    srv.add_argument("--host", default="127.0.0.1")
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "seed":
            job = {"type": args.type, "v": args.v, "w": args.w,
                   "word": args.word, "seed_rng": args.seed_rng}
            sys.stdout.write(cmd_seed(job, args.format))
            return 0
        if args.command == "mutate":
            raw = sys.stdin.read() if args.file == "-" else \
                open(args.file, "r", encoding="utf-8").read()
            try:
                doc = json.loads(raw)
            except json.JSONDecodeError as err:
                raise JobError("not a JSON document: %s" % err) from None
            sys.stdout.write(
                cmd_mutate(doc, args.vertices, args.categorical))
            return 0
        if args.command == "verify":
            suites = tuple(args.suites) or verify.SUITE_NAMES
            text, failed = cmd_verify(suites, args.seed_rng)
            sys.stdout.write(text)
            return 1 if failed else 0
        if args.command == "serve":
            from .service import serve

            serve(args.port, args.host)
            return 0
    except (JobError, DomainError) as err:
        sys.stderr.write("error: %s\n" % err)
        return 2 if isinstance(err, JobError) else 1
    except ValueError as err:
        sys.stderr.write("error: %s\n" % err)
        return 1
    raise AssertionError("unhandled command")


if __name__ == "__main__":
    sys.exit(main())
