import json

import pytest

from pqmr.cli import main
from pqmr.constructions import marshall_quotient
from pqmr.core import builtin, q2, to_json


def run(capsys, *argv):
    code = main(["--json", *argv])
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


@pytest.fixture
def files(tmp_path):
    paths = {}
    paths["q2"] = tmp_path / "q2.json"
    paths["q2"].write_text(to_json(q2()))
    paths["zmod4"] = tmp_path / "zmod4.json"
    paths["zmod4"].write_text(to_json(builtin("zmod:4")))
    paths["fp7"] = tmp_path / "fp7.json"
    paths["fp7"].write_text(to_json(builtin("fp:7")))
    paths["qf7"] = tmp_path / "q-f7-squares.json"
    paths["qf7"].write_text(to_json(marshall_quotient(builtin("fp:7"), {1, 2, 4}).structure))
    paths["broken"] = tmp_path / "broken.json"
    paths["broken"].write_text('{"labels": ["0",\n  ')
    paths["pairZ"] = tmp_path / "pair-Z.json"
    paths["pairZ"].write_text(json.dumps({"ring": "Z", "S": "sums-of-squares"}))
    paths["pairQ2"] = tmp_path / "pair-q2.json"
    doc = json.loads(to_json(q2()))
    doc["S"] = [1]
    paths["pairQ2"].write_text(json.dumps(doc))
    return {k: str(v) for k, v in paths.items()}


def test_check_pass(capsys, files):
    code, doc = run(capsys, "check", files["q2"], "--theory", "rr-multifield")
    assert code == 0 and doc["verdict"] == "pass" and doc["agree"]


def test_check_fail_with_witness(capsys, files):
    code, doc = run(capsys, "check", files["zmod4"], "--theory", "pq")
    assert code == 1 and doc["verdict"] == "fail"
    pqt = next(l for l in doc["hand"]["laws"] if l["tag"] == "PQt")
    assert pqt["witness"] == {"x": "2"}


def test_check_parse_error(capsys, files):
    code = main(["check", files["broken"]])
    err = capsys.readouterr().err
    assert code == 2 and "line 2" in err


def test_check_unknown_theory(capsys, files):
    assert main(["check", files["q2"], "--theory", "groups"]) == 2
    capsys.readouterr()


def test_check_pair_file(capsys, files):
    code, doc = run(capsys, "check", files["pairQ2"], "--theory", "rr-pq-pair")
    assert code == 0 and doc["agree"]


def test_check_integer_pair(capsys, files):
    code, doc = run(capsys, "--bound", "30", "check", files["pairZ"], "--theory", "pq-pair",
                    "--units-mode", "nonzero", "--window", "-3..3")
    assert code == 0


def test_quotient_writes_file(capsys, files, tmp_path):
    out = tmp_path / "q.json"
    code, doc = run(capsys, "quotient", files["fp7"], "--s", "1,2,4", "-o", str(out))
    assert code == 0
    written = json.loads(out.read_text())
    assert written["labels"] == ["0", "1", "3"]
    assert written["class_map"] == {"0": "0", "1": "1", "2": "1", "3": "3", "4": "1", "5": "3", "6": "3"}
    # the written file loads back as a plain structure
    code, doc = run(capsys, "check", str(out), "--theory", "pq")
    assert code == 0


def test_quotient_by_one_and_bad_subset(capsys, files):
    code, doc = run(capsys, "quotient", files["q2"], "--s", "1")
    assert code == 0 and doc["labels"] == ["0", "1", "-1"]
    assert main(["quotient", files["fp7"], "--s", "3"]) == 2
    capsys.readouterr()


def test_quotient_integer_window(capsys, files):
    code, doc = run(capsys, "--bound", "20", "quotient", files["pairZ"], "--window", "-1..1")
    assert code == 0
    assert json.dumps(doc).count("yes") > 0


def test_isometry_commands(capsys):
    code, doc = run(capsys, "isometry", "q2", "--lhs", "1,-1,1", "--rhs", "1,1,-1")
    assert code == 0 and doc["verdict"] is True and len(doc["chain"]) == 1
    code, doc = run(capsys, "isometry", "q2", "--lhs", "1", "--rhs", "1")
    assert code == 0 and doc["verdict"] is True
    code, doc = run(capsys, "isometry", "q2", "--lhs", "1,1", "--rhs", "1,-1")
    assert code == 1 and doc["verdict"] is False
    code, doc = run(capsys, "isometry", "q2", "--lhs", "1,-1,1", "--rhs", "1,1,-1", "--standard")
    assert code == 0 and doc["verdict"] is True
    assert main(["isometry", "q2", "--lhs", "1,1", "--rhs", "1"]) == 2
    assert main(["isometry", "q2", "--lhs", "1,7", "--rhs", "1,1"]) == 2
    capsys.readouterr()


def test_leading_minus_values(capsys):
    code, doc = run(capsys, "isometry", "q2", "--lhs", "-1,1", "--rhs", "1,-1")
    assert code == 0 and doc["verdict"] is True


def test_witt_classes(capsys, tmp_path):
    out = tmp_path / "w.json"
    code, doc = run(capsys, "witt-classes", "q2", "--n", "3", "-o", str(out))
    assert code == 0 and doc["class_count"] == 10
    assert json.loads(out.read_text())["class_count"] == 10


def test_iso_and_morphism(capsys, files):
    code, doc = run(capsys, "iso", files["q2"], "q2")
    assert code == 0 and doc["mapping"] == {"-1": "-1", "0": "0", "1": "1"}
    code, doc = run(capsys, "iso", "q2", "fp:3")
    assert code == 1 and doc["mapping"] is None
    code, doc = run(capsys, "morphism", "zmod:6", "zmod:3", "--map", "0,1,2,0,1,2")
    assert code == 0
    code, doc = run(capsys, "morphism", "zmod:3", "zmod:6", "--map", "0,1,2")
    assert code == 1


def test_product_commands(capsys):
    code, doc = run(capsys, "product", "zmod:2", "zmod:3")
    assert code == 0 and len(doc["labels"]) == 6
    code, doc = run(capsys, "reduced-product", "q2", "fp:3", "zmod:2", "--j", "0,2")
    assert code == 0 and len(doc["labels"]) == 6


def test_search(capsys, files, tmp_path):
    out = tmp_path / "s.json"
    code, doc = run(capsys, "search", "--target", files["qf7"], "--max-ring-size", "7", "-o", str(out))
    assert code == 0 and doc["ring"] == "zmod:7" and doc["S"] == ["1", "2", "4"]
    assert json.loads(out.read_text()) == doc
    code, doc = run(capsys, "search", "--target", "q2", "--max-ring-size", "6")
    assert code == 1 and doc["verdict"] == "exhausted"


def test_corpus(capsys, tmp_path):
    code, doc = run(capsys, "corpus", "--max-size", "2", "--dump-dir", str(tmp_path / "dump"))
    assert code == 0 and doc["total"] == 3 and doc["counts"] == {"1": 1, "2": 2}
    assert len(list((tmp_path / "dump").iterdir())) == 3
    code, doc = run(capsys, "corpus", "--max-size", "3", "--proposition")
    assert code == 0


def test_eval(capsys):
    code, doc = run(capsys, "eval", "q2", "forall (x0) x0 * x0 * x0 = x0")
    assert code == 0 and doc["verdict"] is True
    code, doc = run(capsys, "eval", "zmod:4", "forall (x0) x0 * x0 * x0 = x0")
    assert code == 1
    code, doc = run(capsys, "eval", "q2", "x0 in x0 + x1", "--env", "x0=1,x1=-1")
    assert code == 0
    assert main(["eval", "q2", "x0 = "]) == 2
    capsys.readouterr()


def test_output_is_deterministic(capsys, files):
    argv = ["check", files["zmod4"], "--theory", "pq"]
    main(["--json", *argv])
    a = capsys.readouterr().out
    main(["--json", *argv])
    b = capsys.readouterr().out
    assert a == b and a.endswith("\n")


def test_text_mode(capsys):
    assert main(["check", "q2", "--theory", "pq"]) == 0
    out = capsys.readouterr().out
    assert "pass" in out.lower()
