import json
import shutil

from ncg import connection as C
from ncg import fixtures as fx
from ncg.cli import main
from ncg.forms import omega1_underline


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_inspect(capsys):
    code, out, _ = run(capsys, "inspect", "m2")
    assert code == 0
    assert out.startswith("dim 4, Z dim 1, Der 3, Int 3, Out 0, C∞0: yes")
    code, out, _ = run(capsys, "inspect", "k2")
    assert out.startswith("dim 2, Z dim 2, Der 0, Int 0, Out 0, C∞0: no")


def test_inspect_malformed(capsys, tmp_path):
    d = fx.load_json("m2")
    d["mul"][1][2] = ["0", "1", "0", "0"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(d))
    code, _, err = run(capsys, "inspect", str(bad))
    assert code == 2
    assert "associativity failed at (i,j,k)=" in err


def test_inspect_missing_and_garbage(capsys, tmp_path):
    assert run(capsys, "inspect", str(tmp_path / "none.json"))[0] == 2
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    code, _, err = run(capsys, "inspect", str(junk))
    assert code == 2 and "line 1" in err


def test_forms(capsys):
    assert run(capsys, "forms", "m2", "--max-degree", "4")[1].splitlines()[0] == "4 12 12 4 0"
    assert run(capsys, "forms", "m2", "--variant", "out-underline")[1].splitlines()[0] == "1 0 0 0 0"
    assert run(capsys, "forms", "k2")[1].splitlines()[0] == "2 0 0 0 0"


def test_connection_commands(capsys):
    code, out, _ = run(capsys, "connection", "m2", "--module", "omega1", "--canonical-inner", "--curvature")
    assert code == 0 and "flat: yes" in out
    code, out, _ = run(capsys, "connection", "m2", "--module", "omega1", "--find")
    assert code == 0 and "model dim 27" in out
    code, out, _ = run(capsys, "connection", "m2", "--module", "omega1", "--lie", "--torsion")
    assert code == 0 and "i_T(w)(X,Y) = w([X,Y]) verified" in out


def test_infeasible_is_exit_zero(capsys):
    code, out, _ = run(capsys, "connection", "n3", "--module", "n3_quotient", "--find", "--json")
    assert code == 0
    d = json.loads(out)
    assert d["results"]["status"] == "infeasible"
    assert isinstance(d["results"]["witness_row"], int)


def test_precondition_exit_two(capsys):
    assert run(capsys, "connection", "dual", "--module", "algebra", "--canonical-inner")[0] == 2
    assert run(capsys, "connection", "dual", "--module", "omega1", "--lie")[0] == 2


def test_connection_json_roundtrip(capsys):
    code, out, _ = run(capsys, "connection", "m2", "--module", "omega1", "--canonical-inner", "--json")
    d = json.loads(out)
    A = fx.load("m2")
    O = omega1_underline(A)
    nab = C.connection_from_json(A, O, d["results"]["connection"])
    assert nab.coefficients == C.canonical_inner_connection(A, O).coefficients
    assert json.dumps(nab.to_json(), sort_keys=True) == json.dumps(d["results"]["connection"], sort_keys=True)


def test_levi_civita(capsys, tmp_path):
    code, out, _ = run(capsys, "levi-civita", "m2", "--metric", "killing")
    assert code == 0
    assert out.startswith("unique; ∇_XY = ½[X,Y] confirmed on basis")
    assert "real: yes" in out
    zero = {"kind": "pseudo_metric", "values": [[["0"] * 4] * 3] * 3}
    p = tmp_path / "zero.json"
    p.write_text(json.dumps(zero))
    assert run(capsys, "levi-civita", "m2", "--metric", str(p))[0] == 2


def test_verify_duality(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "duality")
    assert code == 0
    assert "one-form duality (a) and (b) verified on {m2, t2, k2, dual}" in out


def test_fixture_dir_override(capsys, tmp_path, monkeypatch):
    shutil.copy(fx.fixture_path("t2"), tmp_path / "mine.json")
    monkeypatch.setenv("NCG_FIXTURES", str(tmp_path))
    code, out, _ = run(capsys, "inspect", "mine")
    assert code == 0 and out.startswith("dim 3, Z dim 1, Der 2")
    assert run(capsys, "inspect", "m2")[0] == 2


def test_json_is_deterministic(capsys):
    a = run(capsys, "forms", "t2", "--json")[1]
    b = run(capsys, "forms", "t2", "--json")[1]
    assert a == b and json.loads(a)["results"]["underline"] == [3, 6, 3, 0, 0]
