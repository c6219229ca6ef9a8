"""CLI: report envelopes, exit codes, corpus verification."""

import json
import shutil
from pathlib import Path

from ordembed.algebra import algebra_to_doc, order_to_doc
from ordembed.cli import CORPUS_DIR, main, run_report
from ordembed.samples import integers_order, quaternion_algebra

CORPUS = CORPUS_DIR


def run_json(command, argv):
    text, code = run_report(command, argv)
    return json.loads(text), code


def order_arg(name):
    return ["--order", str(CORPUS / f"{name}.json")]


# -- envelope -------------------------------------------------------------------------


def test_envelope_carries_reproducibility_header():
    doc, code = run_json("decompose", ["--algebra", str(CORPUS / "s3.json"),
                                       "--seed", "5", "--budget", "77"])
    assert code == 0
    assert doc["tool"] == "ordembed"
    assert doc["seed"] == 5 and doc["budget"] == 77
    assert doc["command"] == "decompose"
    digest = doc["inputs"]["algebra"]["sha256"]
    assert len(digest) == 64 and doc["inputs"]["algebra"]["name"] == "s3.json"


def test_reports_are_byte_identical_across_runs():
    argv = order_arg("d4") + ["--seed", "3"]
    first, _ = run_report("analyze", argv)
    second, _ = run_report("analyze", argv)
    assert first == second


def test_rationals_are_emitted_as_strings():
    doc, _ = run_json("decompose", ["--algebra", str(CORPUS / "c2.json")])
    idems = [c["idempotent"] for c in doc["report"]["components"]]
    assert sorted(idems) == [["1/2", "-1/2"], ["1/2", "1/2"]]


# -- structural commands --------------------------------------------------------------


def test_decompose_command_on_group_algebra():
    doc, code = run_json("decompose", ["--algebra", str(CORPUS / "s3.json")])
    assert code == 0
    report = doc["report"]
    assert report["semisimple"] and report["component_count"] == 3
    assert sorted(c["dim"] for c in report["components"]) == [1, 1, 4]
    big = max(report["components"], key=lambda c: c["dim"])
    assert big["split"]["kind"] == "split" and big["matrix_size"] == 2


def test_decompose_command_reports_radicals():
    doc, code = run_json("decompose", order_arg("dual"))
    assert code == 0
    assert doc["report"]["semisimple"] is False
    assert doc["report"]["radical"]["dim"] == 1


def test_min_primes_command():
    doc, code = run_json("min-primes", order_arg("crt"))
    assert code == 0
    assert [p["basis"] for p in doc["report"]["primes"]] == [[[1, 1]], [[1, -1]]]
    doc, code = run_json("min-primes", order_arg("dual"))
    assert code == 0
    assert doc["report"]["semiprime"] is False
    assert doc["report"]["nilpotent_witness"] == [0, 1]


def test_quotient_command():
    doc, code = run_json("quotient", order_arg("m2z"))
    assert code == 0
    report = doc["report"]
    assert report["semisimple"] and report["prime_spans_match"]
    assert report["centre"]["rank"] == 1


def test_criteria_command_agreement_field():
    doc, code = run_json("criteria", order_arg("t2z"))
    assert code == 0
    report = doc["report"]
    assert report["agree"]
    assert report["centre_criterion"]["verdict"] is False
    assert report["idempotent_centre"]["verdict"] is False
    assert report["embeddability"]["verdict"] is False


def test_criteria_command_surfaces_non_etale_centres():
    doc, code = run_json("criteria", order_arg("dual"))
    assert code == 0
    assert doc["report"]["idempotent_centre"]["error"]["type"] == "CentreNotEtale"
    assert doc["report"]["agree"]


def test_analyze_command_summarizes_verdicts():
    doc, code = run_json("analyze", order_arg("lipschitz"))
    assert code == 0
    report = doc["report"]
    assert report["semiprime"] and report["verdicts"]["agree"]
    comp, = report["decomposition"]["components"]
    assert comp["split"]["kind"] == "quaternion_division"
    assert comp["split"]["places"] == ["2", "inf"]


# -- embedding commands ---------------------------------------------------------------


def test_classify_command_on_scalar_demo():
    doc, code = run_json("classify", ["--embedding", str(CORPUS / "demo-scalar.json")])
    assert code == 0
    report = doc["report"]
    assert report["natural"] is True and report["elementary"] is False
    assert report["per_prime"][0]["witness"]["dim"] == 2


def test_minimize_command_reaches_the_rationals():
    doc, code = run_json(
        "minimize",
        ["--embedding", str(CORPUS / "demo-scalar.json"), "--seed", "7",
         "--budget", "500"],
    )
    assert code == 0
    report = doc["report"]
    assert [s["kind"] for s in report["stages"]] == ["minimize"]
    assert report["final"]["codomain_dim"] == 1
    assert report["final"]["classification"]["elementary"] is True
    stage = report["stages"][0]
    assert stage["into_parent"]["verified"] and stage["onto_selected"]["verified"]


def test_embedding_refs_resolve_next_to_the_file():
    doc, code = run_json("classify", ["--embedding", str(CORPUS / "demo-crt.json")])
    assert code == 0
    assert "ref:crt" in doc["inputs"] and "ref:m2z" in doc["inputs"]


def test_budget_exhaustion_exits_two(tmp_path):
    hidden = quaternion_algebra(1, 3)
    doc = {
        "domain": order_to_doc(integers_order()),
        "codomain": [algebra_to_doc(hidden)],
        "map": [["1", "0", "0", "0"]],
    }
    path = tmp_path / "hidden.json"
    path.write_text(json.dumps(doc))
    out, code = run_json("classify", ["--embedding", str(path), "--budget", "0"])
    assert code == 2
    assert out["report"]["elementary"] is None
    out, code = run_json("minimize", ["--embedding", str(path), "--budget", "0"])
    assert code == 2
    assert out["report"]["error"]["type"] == "UnresolvedSimplicity"
    out, code = run_json("minimize", ["--embedding", str(path), "--budget", "1000"])
    assert code == 0
    assert out["report"]["final"]["codomain_dim"] == 1


# -- input errors ---------------------------------------------------------------------


def test_missing_file_exits_one():
    doc, code = run_json("analyze", order_arg("nosuch"))
    assert code == 1
    assert doc["report"]["error"]["type"] == "FileNotFoundError"


def test_malformed_json_exits_one(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    doc, code = run_json("analyze", ["--order", str(path)])
    assert code == 1
    assert "invalid JSON" in doc["report"]["error"]["message"]


def test_non_injective_embedding_exits_one(tmp_path):
    doc = {
        "domain": order_to_doc(integers_order()),
        "codomain": [algebra_to_doc(integers_order().coord_algebra)],
        "map": [["0"]],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    out, code = run_json("classify", ["--embedding", str(path)])
    assert code == 1
    assert out["report"]["error"]["type"] == "ParseError"


# -- output modes ---------------------------------------------------------------------


def test_text_format_renders_lines():
    text, code = run_report("min-primes", order_arg("crt") + ["--format", "text"])
    assert code == 0
    assert "command: min-primes" in text
    assert "semiprime: True" in text


def test_output_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["quotient", *order_arg("z"), "--output", str(target)])
    assert code == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["command"] == "quotient"


# -- corpus verification --------------------------------------------------------------


def test_verify_passes_on_pristine_corpus():
    doc, code = run_json("verify", [])
    assert code == 0
    report = doc["report"]
    assert report["failed"] == 0 and report["unverified"] == 0
    assert report["passed"] == len(report["entries"])


def test_verify_detects_golden_drift(tmp_path):
    drift = tmp_path / "corpus"
    shutil.copytree(CORPUS, drift)
    golden = drift / "golden" / "z.analyze.json"
    golden.write_text(golden.read_text().replace('"rank": 1', '"rank": 9', 1))
    doc, code = run_json("verify", ["--corpus", str(drift)])
    assert code == 1
    entry = next(e for e in doc["report"]["entries"] if e["name"] == "z")
    assert entry["status"] == "mismatch"
    assert entry["diff"].startswith("--- golden/z.analyze.json")


def test_verify_reports_missing_goldens(tmp_path):
    drift = tmp_path / "corpus"
    shutil.copytree(CORPUS, drift)
    (drift / "golden" / "c3.analyze.json").unlink()
    doc, code = run_json("verify", ["--corpus", str(drift)])
    assert code == 2
    entry = next(e for e in doc["report"]["entries"] if e["name"] == "c3")
    assert entry["status"] == "unverified"
