"""Command line: documents, mutation semantics, formats, exit codes."""

import json

import pytest

from richardson import cli

BIG_JOB = {
    "type": "A5",
    "v": "s1 s2 s1 s4 s5 s4",
    "w": "s1 s3 s5 s2 s4 s1 s3 s5 s2 s4 s1 s3 s5 s4",
    "word": "s1 s3 s5 s2 s4 s1 s3 s5 s2 s4 s1 s3 s5 s4",
    "seed_rng": None,
}


def big_doc():
    return cli.build_seed_document(BIG_JOB)


def job(type_, v, w, word=None, seed_rng=None):
    return {"type": type_, "v": v, "w": w, "word": word, "seed_rng": seed_rng}


# -- seed documents ----------------------------------------------------------------


def test_big_document_counts_and_frozen_set():
    doc = big_doc()
    assert doc["counts"] == {"vertices": 8, "frozen": 5, "mutable": 3}
    assert [v["id"] for v in doc["vertices"]] == [3, 7, 8, 10, 11, 12, 13, 14]
    assert [v["id"] for v in doc["vertices"] if v["frozen"]] == [10, 11, 12, 13, 14]
    assert doc["meta"]["mutable_type"] == "A3"
    assert doc["warnings"] == []


def test_big_document_minor_labels_are_the_display_forms():
    doc = big_doc()
    labels = {v["id"]: v["label"] for v in doc["vertices"]}
    assert labels == {
        3: "D(3,5)",
        7: "D(3,4)",
        8: "D(123,256)",
        10: "D(123,245)",
        11: "D(23,56)",
        12: "D(123,234)",
        13: "D(123,456)",
        14: "D(3,6)",
    }


def test_big_document_variables_start_formal():
    doc = big_doc()
    assert doc["variables"] == ["x%d" % v["id"] for v in doc["vertices"]]


def test_single_letter_seed_has_one_frozen_vertex():
    doc = cli.build_seed_document(job("A2", "", "s1"))
    assert doc["counts"] == {"vertices": 1, "frozen": 1, "mutable": 0}
    assert doc["vertices"][0]["label"] == "D(1,2)"
    assert doc["meta"]["mutable_type"] is None


def test_small_seed_has_two_frozen_vertices():
    doc = cli.build_seed_document(job("A3", "s2", "s1 s2 s3"))
    assert doc["counts"] == {"vertices": 2, "frozen": 2, "mutable": 0}


def test_other_types_come_without_labels_but_with_a_warning():
    doc = cli.build_seed_document(job("D4", "", "s1 s2"))
    assert doc["counts"]["vertices"] == 2
    assert all(v["label"] == "" for v in doc["vertices"])
    assert any("type A" in w for w in doc["warnings"])


def test_document_bytes_are_deterministic():
    a = cli.document_bytes(big_doc())
    b = cli.document_bytes(cli.build_seed_document(dict(BIG_JOB)))
    assert a == b
    assert a.endswith("\n")


def test_canonical_word_is_the_default():
    doc = cli.build_seed_document(job("A5", BIG_JOB["v"], BIG_JOB["w"]))
    assert doc["counts"] == {"vertices": 8, "frozen": 5, "mutable": 3}
    assert doc["meta"]["word"] != BIG_JOB["word"]  # canonical, not the input


def test_seed_rng_is_echoed():
    doc = cli.build_seed_document(job("A2", "", "s1", seed_rng=17))
    assert doc["meta"]["seed_rng"] == 17


# -- validation --------------------------------------------------------------------


def test_v_not_below_w_is_a_domain_error():
    with pytest.raises(cli.DomainError):
        cli.build_seed_document(job("A3", "s1 s2 s1", "s1"))


def test_non_reduced_word_is_a_domain_error():
    with pytest.raises(cli.DomainError):
        cli.build_seed_document(job("A3", "", "s1", word="s1 s1 s1"))


def test_disagreeing_w_and_word_is_a_domain_error():
    with pytest.raises(cli.DomainError):
        cli.build_seed_document(job("A3", "", "s1", word="s2"))


def test_bad_type_and_bad_tokens_are_job_errors():
    with pytest.raises(cli.JobError):
        cli.build_seed_document(job("B3", "", "s1"))
    with pytest.raises(cli.JobError):
        cli.build_seed_document(job("A3", "", "monkey"))
    with pytest.raises(cli.JobError):
        cli.build_seed_document(job("A3", "", "s7"))


def test_job_from_mapping_checks_shapes():
    good = cli.job_from_mapping({"type": "A2", "w": "s1"})
    assert good["v"] == "" and good["word"] is None
    with pytest.raises(cli.JobError):
        cli.job_from_mapping([1, 2])
    with pytest.raises(cli.JobError):
        cli.job_from_mapping({"type": "A2"})
    with pytest.raises(cli.JobError):
        cli.job_from_mapping({"type": "A2", "w": "s1", "extra": 1})
    with pytest.raises(cli.JobError):
        cli.job_from_mapping({"type": "A2", "w": 5})
    with pytest.raises(cli.JobError):
        cli.job_from_mapping({"type": "A2", "w": "s1", "seed_rng": "x"})


# -- mutation ----------------------------------------------------------------------


def test_empty_mutation_echoes_the_document():
    doc = big_doc()
    out = cli.mutate_document(doc, [])
    assert cli.document_bytes(out) == cli.document_bytes(doc)


def test_double_mutation_echoes_the_document():
    doc = big_doc()
    out = cli.mutate_document(doc, [3, 3])
    assert cli.document_bytes(out) == cli.document_bytes(doc)


def test_mutation_rewrites_variables_arrows_and_bracket():
    doc = big_doc()
    out = cli.mutate_document(doc, [3])
    assert out["variables"][0] == "(x7*x8 + x10*x14)/x3"
    assert out["variables"][1:] == doc["variables"][1:]
    assert out["arrows"] != doc["arrows"]
    assert out["lambda"] != doc["lambda"]
    assert out["vertices"] == doc["vertices"]  # initial annotations stay


def test_frozen_vertex_mutation_is_rejected():
    doc = big_doc()
    with pytest.raises(cli.DomainError):
        cli.mutate_document(doc, [10])


def test_unknown_vertex_mutation_is_rejected():
    doc = big_doc()
    with pytest.raises(cli.DomainError):
        cli.mutate_document(doc, [99])


def test_malformed_document_is_a_job_error():
    with pytest.raises(cli.JobError):
        cli.mutate_document({"vertices": []}, [1])
    doc = big_doc()
    broken = json.loads(cli.document_bytes(doc))
    broken["variables"][0] = "x3 +"
    with pytest.raises(cli.JobError):
        cli.mutate_document(broken, [3])


def test_categorical_replay_agrees_along_a_path():
    doc = big_doc()
    out = cli.mutate_document(doc, [3, 7, 8, 3], categorical=True)
    plain = cli.mutate_document(doc, [3, 7, 8, 3])
    assert cli.document_bytes(out) == cli.document_bytes(plain)


def test_categorical_replay_requires_the_initial_document():
    doc = cli.mutate_document(big_doc(), [3])
    with pytest.raises(cli.DomainError):
        cli.mutate_document(doc, [7], categorical=True)


def test_mutation_roundtrips_through_json_bytes():
    doc = big_doc()
    one = json.loads(cli.document_bytes(cli.mutate_document(doc, [3])))
    two = cli.mutate_document(one, [3])
    assert cli.document_bytes(two) == cli.document_bytes(doc)


# -- formats and entry point --------------------------------------------------------


def test_dot_output_shapes_frozen_vertices_as_boxes():
    text = cli.document_to_dot(big_doc())
    assert text.startswith("digraph seed {")
    assert '  v3 [shape=ellipse, label="3: D(3,5)"];' in text
    assert '  v10 [shape=box, label="10: D(123,245)"];' in text
    assert "  v10 -> v7;" in text


def test_main_seed_writes_json(capsys):
    rc = cli.main(["seed", "-t", "A2", "-v", "", "-w", "s1"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["counts"]["vertices"] == 1


def test_main_seed_dot_format(capsys):
    rc = cli.main(["seed", "-t", "A2", "-w", "s1", "--format", "dot"])
    assert rc == 0
    assert capsys.readouterr().out.startswith("digraph seed {")


def test_main_rejects_v_not_below_w(capsys):
    rc = cli.main(["seed", "-t", "A3", "-v", "s1 s2 s1", "-w", "s1"])
    assert rc == 1
    assert "Bruhat" in capsys.readouterr().err


def test_main_rejects_malformed_type(capsys):
    rc = cli.main(["seed", "-t", "Q9", "-w", "s1"])
    assert rc == 2
    assert "type" in capsys.readouterr().err


def test_main_mutate_reads_a_file(tmp_path, capsys):
    path = tmp_path / "seed.json"
    path.write_text(cli.document_bytes(big_doc()), encoding="utf-8")
    rc = cli.main(["mutate", str(path), "3"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["variables"][0] == "(x7*x8 + x10*x14)/x3"


def test_main_mutate_rejects_bad_json(tmp_path, capsys):
    path = tmp_path / "seed.json"
    path.write_text("not json", encoding="utf-8")
    rc = cli.main(["mutate", str(path), "3"])
    assert rc == 2
    assert "JSON" in capsys.readouterr().err


def test_main_verify_runs_a_suite(capsys):
    rc = cli.main(["verify", "sect71"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "[PASS] G7-zeta" in out
    assert out.strip().endswith("0 failed")


def test_main_verify_unknown_suite(capsys):
    rc = cli.main(["verify", "bogus"])
    assert rc == 1
    assert "sect72" in capsys.readouterr().err
