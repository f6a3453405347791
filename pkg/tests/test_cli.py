import json
from pathlib import Path

import jsonschema
import numpy as np
import pytest
import scipy.linalg
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

import opclass.cli as cli
from opclass.matio import save_matrix

SCHEMA_DIR = Path(cli.__file__).parent / "schemas"


def _validator(name: str) -> Draft202012Validator:
    resources = []
    for path in SCHEMA_DIR.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        resources.append((path.name, Resource.from_contents(doc)))
        resources.append((doc["$id"], Resource.from_contents(doc)))
    registry = Registry().with_resources(resources)
    schema = json.loads((SCHEMA_DIR / name).read_text())
    return Draft202012Validator(schema, registry=registry)


def _run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture
def identity_file(tmp_path):
    path = tmp_path / "ident.json"
    save_matrix(path, np.eye(3, dtype=complex))
    return str(path)


@pytest.fixture
def j2_file(tmp_path, j2):
    path = tmp_path / "j2.json"
    save_matrix(path, j2)
    return str(path)


def test_classify_identity(capsys, identity_file):
    code, doc = _run(capsys, ["classify", identity_file])
    assert code == 0
    assert all(v["status"] == "Member" for v in doc["verdicts"])
    assert doc["chain_violations"] == []
    _validator("classify.schema.json").validate(doc)


def test_classify_j2_with_k_list(capsys, j2_file):
    code, doc = _run(capsys, ["classify", j2_file, "--k", "1", "2"])
    assert code == 0
    status = {
        (v["class"], v["params"].get("k")): v["status"] for v in doc["verdicts"]
    }
    assert status[("KQuasiParanormal", 1)] == "Member"
    assert status[("KQuasiParanormal", 2)] == "Member"
    assert status[("Paranormal", None)] == "NonMember"
    assert status[("Normaloid", None)] == "NonMember"
    _validator("classify.schema.json").validate(doc)


def test_classify_nonsquare_is_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 2, "entries": [[1, 0]] * 3}))
    code, doc = _run(capsys, ["classify", str(bad)])
    assert code == 1
    assert doc["error"]["type"] == "ParseError"


def test_decompose_normal_pure(capsys, tmp_path, j2):
    path = tmp_path / "mix.json"
    save_matrix(path, scipy.linalg.block_diag([[5.0]], j2).astype(complex))
    code, doc = _run(capsys, ["decompose", "normal-pure", str(path)])
    assert code == 0
    dec = doc["decomposition"]
    assert dec["labels"] == ["NormalPart", "PurePart"]
    assert dec["block_dims"] == [1, 2]
    _validator("decomposition.schema.json").validate(doc)


def test_decompose_root(capsys, tmp_path, j2):
    path = tmp_path / "root.json"
    save_matrix(path, scipy.linalg.block_diag([[1.0]], j2).astype(complex))
    code, doc = _run(capsys, ["decompose", "root", str(path), "--n", "2", "--k", "1"])
    assert code == 0
    assert doc["decomposition"]["labels"] == ["NormalPart", "NilpotentPart"]
    assert max(doc["decomposition"]["residuals"].values()) < 1e-8


def test_decompose_root_hypothesis_violated(capsys, tmp_path, j3):
    path = tmp_path / "j3.json"
    save_matrix(path, j3)
    code, doc = _run(capsys, ["decompose", "root", str(path), "--n", "2", "--k", "1"])
    assert code == 1
    assert doc["error"]["type"] == "HypothesisViolated"


def test_decompose_nilpotent2(capsys, j2_file):
    code, doc = _run(capsys, ["decompose", "nilpotent2", j2_file])
    assert code == 0
    assert doc["decomposition"]["rr_form"]["C"]["entries"] == [[1.0, 0.0]]


def test_generate_deterministic(capsys, tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    for out in (out1, out2):
        code = cli.main([
            "generate", "counterexample", "--dim-m", "2", "--dim-n", "2",
            "--seed", "7", "-o", str(out),
        ])
        capsys.readouterr()
        assert code == 0
    assert out1.read_text() == out2.read_text()
    sidecar = json.loads((tmp_path / "a.json.sidecar.json").read_text())
    assert sidecar["certification"]["normaloid"]["status"] == "Member"
    assert sidecar["certification"]["normal"]["status"] == "NonMember"
    _validator("sidecar.schema.json").validate(sidecar)


def test_generate_jordan_sidecar(capsys, tmp_path):
    out = tmp_path / "j.json"
    code = cli.main([
        "generate", "jordan", "--dim", "4", "--index", "3", "--seed", "1",
        "-o", str(out),
    ])
    capsys.readouterr()
    assert code == 0
    sidecar = json.loads((out.parent / "j.json.sidecar.json").read_text())
    assert sidecar["certification"]["k_quasi_paranormal[k=2]"]["status"] == "Member"
    _validator("sidecar.schema.json").validate(sidecar)


def test_generate_rr_sidecar(capsys, tmp_path):
    out = tmp_path / "rr.json"
    code = cli.main([
        "generate", "rr", "--dim-a", "1", "--dim-bc", "2", "--seed", "3",
        "-o", str(out),
    ])
    capsys.readouterr()
    assert code == 0
    sidecar = json.loads((out.parent / "rr.json.sidecar.json").read_text())
    assert sidecar["certification"]["square_of_normal"]["status"] == "Member"


def test_generate_then_classify_round_trip(capsys, tmp_path):
    out = tmp_path / "k.json"
    code = cli.main([
        "generate", "k-quasi", "--dim-normal", "2", "--dim-nil", "2",
        "--k", "1", "--seed", "11", "-o", str(out),
    ])
    capsys.readouterr()
    assert code == 0
    sidecar = json.loads((out.parent / "k.json.sidecar.json").read_text())
    cert = sidecar["certification"]["k_quasi_paranormal[k=1]"]

    code, doc = _run(capsys, ["classify", str(out), "--seed", "11"])
    assert code == 0
    row = next(
        v for v in doc["verdicts"]
        if v["class"] == "KQuasiParanormal" and v["params"].get("k") == 1
    )
    assert row["status"] == cert["status"]
    assert row["defect"] == cert["defect"]


def test_generate_matrix_market_format(capsys, tmp_path):
    out = tmp_path / "u.mtx"
    code = cli.main(["generate", "unitary", "--dim", "3", "--seed", "2", "-o", str(out)])
    capsys.readouterr()
    assert code == 0
    assert "MatrixMarket" in out.read_text().splitlines()[0]


def test_verify_single_suite(capsys, tmp_path):
    report = tmp_path / "rep.json"
    code, doc = _run(capsys, [
        "verify", "ando", "--trials", "8", "--max-dim", "5", "--seed", "42",
        "-o", str(report),
    ])
    assert code == 0
    assert doc["failures_total"] == 0
    full = json.loads(report.read_text())
    assert full["reports"][0]["theorem_id"] == "ando"
    assert full["reports"][0]["notes"]["counterexamples_confirmed"] >= 1
    _validator("suite_report.schema.json").validate(full)


def test_verify_unknown_theorem(capsys):
    code, doc = _run(capsys, ["verify", "bogus-id"])
    assert code == 1
    assert doc["error"]["type"] == "UnknownTheorem"


def test_verify_search_q2(capsys, tmp_path):
    report = tmp_path / "q2.json"
    code, doc = _run(capsys, [
        "verify", "search-q2", "--trials", "6", "--max-dim", "4", "--seed", "1",
        "-o", str(report),
    ])
    assert code == 0
    full = json.loads(report.read_text())
    assert full["reports"][0]["notes"]["candidates"] == 0


def test_seed_env_default(capsys, j2_file, monkeypatch):
    monkeypatch.setenv("OPCLASS_SEED", "99")
    code, doc = _run(capsys, ["classify", j2_file])
    assert code == 0
    assert doc["seed"] == 99


def test_matrix_file_schema(identity_file):
    doc = json.loads(Path(identity_file).read_text())
    _validator("matrix.schema.json").validate(doc)


def test_verdict_schema(capsys, j2_file):
    code, doc = _run(capsys, ["classify", j2_file])
    validator = _validator("verdict.schema.json")
    for row in doc["verdicts"]:
        verdict = {k: v for k, v in row.items() if k not in ("class", "params")}
        validator.validate(verdict)
