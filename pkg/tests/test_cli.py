import io
import json

import jsonschema
import pytest

from supalg import catalog
from supalg.cli import SCHEMA_PATH, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, _ = call(*argv)
    return code, json.loads(out)


def test_check():
    code, out = call_json("check", "--algebra", "catalog:der_hs3")
    assert code == 0
    assert out["jacobi"]["pass"] and out["lie_superalgebra"]


def test_check_reports_failure(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"dim_even": 3, "dim_odd": 0,
                                "brackets": [[0, 1, 0, "1"], [1, 0, 0, "-1"], [1, 2, 1, "1"], [2, 1, 1, "-1"]]}))
    code, out = call_json("check", "--algebra", str(path))
    assert code == 1 and not out["jacobi"]["pass"]


def test_biderivations():
    code, out = call_json("biderivations", "--algebra", "catalog:der_hs3", "--degree", "0", "--definition", "new")
    assert code == 0 and out["dimension"] == 1 and out["unknowns"] == 172
    code, out = call_json("biderivations", "--algebra", "catalog:example_2dim", "--degree", "1",
                          "--definition", "yuan-tang")
    assert out["basis"][0]["coeffs"] == [[0, 1, 0, "-2"], [1, 0, 0, "2"], [1, 1, 1, "1"]]


def test_solver_subcommands():
    assert call_json("derivations", "--algebra", "catalog:hs3", "--degree", "0")[1]["dimension"] == 4
    code, out = call_json("type2", "--algebra", "catalog:der_hs3", "--degree", "1")
    assert out["dimension"] == 3 and out["inner_decomposition"]["status"] == "inner"
    assert call_json("center", "--algebra", "catalog:hs2")[1]["basis"] == [["1", "0", "0"]]
    code, out = call_json("complete", "--algebra", "catalog:der_hs3")
    assert out["complete"] and out["der_dims"] == [4, 3]


def test_supercommuting():
    code, out = call_json("supercommuting", "--algebra", "catalog:der_hs3", "--definition", "new")
    assert code == 0 and out["dimension"] == 1
    code, out = call_json("supercommuting", "--algebra", "catalog:sl12", "--definition", "fan-dai")
    assert code == 1 and out["self_bracket"] == ["4", "2", "2", "2", "0", "0", "0", "0"]
    code, out = call_json("supercommuting", "--algebra", "catalog:sl12", "--definition", "new", "--map", "zero")
    assert code == 0 and out["pass"]


def test_supercommuting_map_file(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps([["2", "0"], ["0", "2"]]))
    code, out = call_json("supercommuting", "--algebra", "catalog:example_2dim", "--map", str(path))
    assert code == 0 and out["pass"]
    path.write_text(json.dumps([["1", "0"]]))
    assert call("supercommuting", "--algebra", "catalog:example_2dim", "--map", str(path))[0] == 3


def test_phi_psi():
    code, out = call_json("phi-psi", "--algebra", "catalog:der_hs3")
    assert code == 0 and out["phi"][0][0] == "1"
    code, out = call_json("phi-psi", "--algebra", "catalog:hs3")
    assert code == 1 and not out["pass"]


def test_deform(tmp_path):
    code, out = call_json("deform", "--algebra", "catalog:hs2", "--bider", "bracket",
                          "--lambda", "1/2", "--lambda", "-1")
    assert code == 0
    assert [r["lambda"] for r in out] == ["1/2", "-1"]
    assert out[1]["brackets"] == [] and all(r["is_lie"] for r in out)
    path = tmp_path / "b.json"
    path.write_text(json.dumps({"degree": 0, "coeffs": [[1, 1, 0, "2"], [2, 2, 0, "2"]]}))
    code, out = call_json("deform", "--algebra", "catalog:hs2", "--bider", str(path), "--lambda", "1")
    assert out[0]["brackets"] == [[1, 1, 0, "3"], [2, 2, 0, "3"]]


def test_catalog_commands():
    code, out = call_json("catalog", "list")
    assert code == 0 and "sl12" in [e["id"] for e in out]
    code, text, _ = call("catalog", "emit", "der_hs3")
    assert text == catalog.dumps(catalog.der_heisenberg(3))


def test_human_tables():
    code, text, _ = call("complete", "--algebra", "catalog:hs3", "--human")
    assert code == 0 and text.splitlines()[0].split() == ["field", "value"]
    code, text, _ = call("--human", "catalog", "list")
    assert "abelian<p>_<q>" in text


@pytest.mark.parametrize("argv,code", [
    (["bogus"], 2),
    (["check"], 2),
    (["check", "--algebra", "catalog:nope"], 2),
    (["derivations", "--algebra", "catalog:hs2", "--degree", "3"], 2),
    (["deform", "--algebra", "catalog:hs2", "--bider", "bracket", "--lambda", "2/4"], 2),
    (["check", "--algebra", "/does/not/exist.json"], 3),
])
def test_exit_codes(argv, code, capsys):
    assert call(*argv)[0] == code


def test_file_errors_go_to_stderr(tmp_path):
    path = tmp_path / "a.json"
    path.write_text('{"dim_even": 1, "dim_odd": 0, "brackets": [[0, 0, 0, "2/4"]]}')
    code, out, err = call("check", "--algebra", str(path))
    assert code == 3 and out == "" and "2/4" in err


def test_output_is_byte_stable():
    argv = ("biderivations", "--algebra", "catalog:der_hs2", "--degree", "0")
    assert call(*argv)[1] == call(*argv)[1]


def test_verify_paper_report_matches_schema():
    code, out = call_json("verify-paper", "--json", "--claim", "C05-definition-separation",
                          "--claim", "C11-fan-dai-refutation")
    schema = json.loads(SCHEMA_PATH.read_text())
    jsonschema.validate(out, schema)
    assert code == 0 and out["summary"] == {"total": 2, "passed": 2, "failed": 0}
