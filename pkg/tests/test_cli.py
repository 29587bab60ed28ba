import json
from fractions import Fraction

from horncones.cli import main, parse_point
from horncones.involution import e1_system
from horncones.polyhedra import from_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_text(capsys):
    code, out, _ = run(capsys, "gen", "horn", "--n", "2")
    assert code == 0
    assert out.splitlines() == ["x1 + x2 + y1 + y2 = z1 + z2", "x1 + y1 >= z1", "x1 + y2 >= z2", "x2 + y1 >= z2"]


def test_gen_json_round_trip(capsys):
    code, out, _ = run(capsys, "gen", "e1", "--n", "3", "--format", "json")
    assert code == 0
    assert from_json(out) == e1_system(3)


def test_gen_include_chamber(capsys):
    _, out, _ = run(capsys, "gen", "horn", "--n", "2", "--include-chamber")
    assert "x1 >= x2" in out.splitlines()


def test_check_member_and_nonmember(capsys):
    code, out, _ = run(capsys, "check", "horn", "--n", "2", "--point", "x=1,0;y=1,0;z=1,1")
    assert code == 0 and out.startswith("member")
    code, out, _ = run(capsys, "check", "horn", "--n", "2", "--point", "x=1,0;y=1,0;z=2,1")
    assert code == 1 and "violated" in out
    code, _, _ = run(capsys, "check", "horn", "--n", "2", "--point", "x=1/2,0;y=1/2,0;z=1/2,1/2")
    assert code == 0
    code, _, _ = run(capsys, "check", "horn", "--n", "2", "--tol", "1e-9", "--point", "x=1,0;y=1,0;z=1,1")
    assert code == 0


def test_check_bad_point(capsys):
    code, _, err = run(capsys, "check", "horn", "--n", "2", "--point", "x=1,0;y=1,0")
    assert code == 2 and "error" in err
    assert run(capsys, "check", "horn", "--n", "2", "--point", "x=a,0;y=1,0;z=1,1")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys, "gen", "nope", "--n", "2")[0] == 2
    assert run(capsys, "gen", "horn")[0] == 2
    assert run(capsys, "verify", "horn", "--n", "0")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "verify", "horn", "--n", "2", "--trials", "0")[0] == 2


def test_lr(capsys):
    code, out, _ = run(capsys, "lr", "--lambda", "3,2,1", "--mu", "2,1", "--nu", "2,1")
    assert code == 0 and out.strip() == "2"
    code, out, _ = run(capsys, "lr", "--lambda", "", "--mu", "", "--nu", "")
    assert out.strip() == "1"


def test_count(capsys):
    code, out, _ = run(capsys, "count", "horn", "--n", "4", "--variant", "strict-one")
    assert code == 0
    assert "41 GE, 1 EQ" in out and "half-spaces (GE + chamber + 2 per EQ): 52" in out
    _, out, _ = run(capsys, "count", "sing", "--p", "3", "--q", "2")
    assert "18 GE" in out and "fixture sing_p_2" in out


def test_verify(capsys, monkeypatch):
    monkeypatch.delenv("CI", raising=False)
    monkeypatch.delenv("CI_SEED", raising=False)
    code, out, _ = run(capsys, "verify", "e1", "--n", "3", "--trials", "200", "--seed", "1", "--cross")
    assert code == 0
    assert "soundness" in out and "equivalence" in out
    code, out, _ = run(capsys, "verify", "horn", "--n", "2", "--trials", "50", "--json")
    assert code == 0 and json.loads(out[out.index("\n[") + 1:])[0]["ok"]


def test_ci_seed(capsys, monkeypatch):
    monkeypatch.setenv("CI", "1")
    monkeypatch.delenv("CI_SEED", raising=False)
    assert run(capsys, "verify", "horn", "--n", "2", "--trials", "10")[0] == 2
    monkeypatch.setenv("CI_SEED", "7")
    code, out, _ = run(capsys, "verify", "horn", "--n", "2", "--trials", "10", "--json")
    assert code == 0 and '"seed": 7' in out
    monkeypatch.setenv("CI_SEED", "x")
    assert run(capsys, "verify", "horn", "--n", "2", "--trials", "10")[0] == 2


def test_fixtures(capsys, monkeypatch):
    monkeypatch.delenv("CI", raising=False)
    code, out, _ = run(capsys, "fixtures")
    assert code == 0 and "sing_3_3" in out
    code, out, _ = run(capsys, "fixtures", "e1_3", "--show", "--compare", "--trials", "2000")
    assert code == 0 and "equal" in out and "x2 <= y1" not in out
    assert run(capsys, "fixtures", "nope")[0] == 2
    code, out, _ = run(capsys, "fixtures", "lr_2_2", "--compare", "--trials", "4000")
    assert code == 1 and "DIFFERENT" in out


def test_parse_point():
    assert parse_point("x=1/2,0; y=3") == {"x": [Fraction(1, 2), 0], "y": [3]}
    assert parse_point("x=1/2", exact=False) == {"x": [0.5]}
