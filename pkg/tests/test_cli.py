import json

import pytest

from ringgroom import cli
from ringgroom.designkit.errors import ConstructionFailure


def run(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_json(capsys, tmp_path):
    dest = tmp_path / "d.json"
    code, out, _ = run(capsys, "--format", "json", "construct", "--n", "7", "--v", "5", "--cprime", "2", "-o", str(dest))
    assert code == 0
    assert json.loads(out)["cost"] == 22
    code, out, _ = run(capsys, "verify", str(dest))
    assert code == 0 and out.startswith("valid: cost 22")


def test_verify_example_one(capsys, tmp_path):
    dest = tmp_path / "ex1.json"
    assert run(capsys, "fixture", "Ex1", "-o", str(dest))[0] == 0
    code, out, _ = run(capsys, "verify", str(dest), "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["valid"] and rep["drop_cost"] == 21 and rep["wavecost"] == 6


def test_verify_failure(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 3, "v": 0, "cprime": 4, "wavelengths": [[[[0, 1]]]]}))
    code, out, _ = run(capsys, "verify", str(bad))
    assert code == 1 and "MISSING_EDGE" in out


def test_bounds(capsys):
    code, out, _ = run(capsys, "--format", "json", "bounds", "--v", "11", "--w", "2")
    assert code == 0 and json.loads(out)["delta_min"] == 2


def test_cost(capsys):
    code, out, _ = run(capsys, "cost", "--n", "7", "--v", "4", "--cprime", "1", "--format", "json")
    assert json.loads(out)["cost"] == 21


def test_oracle(capsys):
    code, out, _ = run(capsys, "--format", "json", "oracle", "--n", "6", "--v", "5", "--cprime", "3", "--triangles")
    res = json.loads(out)
    assert code == 0 and res["optimum_cost"] == 15 and res["optimum_triangles_at_cost"] == 1


def test_table_check(capsys):
    code, out, _ = run(capsys, "table", "--n-min", "5", "--n-max", "8", "--mon", "--check")
    assert code == 0 and "0 mismatches" in out
    code, out, _ = run(capsys, "--format", "json", "table", "--n-min", "6", "--n-max", "6", "--cprime", "3")
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == 6 and all(r["ok"] for r in rows)


def test_fixture_list(capsys):
    code, out, _ = run(capsys, "fixture", "--list")
    assert code == 0 and "D.MON(17+3,17;4,3)" in out.split()


@pytest.mark.parametrize(
    "argv",
    [
        ["construct", "--n", "7"],
        ["construct", "--n", "3", "--v", "1", "--cprime", "1"],
        ["construct", "--n", "7", "--v", "7", "--cprime", "3"],
        ["fixture", "nope"],
        ["bogus"],
        ["verify", "/nonexistent.json"],
        ["table", "--n-min", "3"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_construction_failure_exit(capsys, monkeypatch):
    def boom(req):
        raise ConstructionFailure("pts_with_leave", "no luck")

    monkeypatch.setattr(cli, "build", boom)
    code, _, err = run(capsys, "construct", "--n", "9", "--v", "7", "--cprime", "3")
    assert code == 3 and "pts_with_leave" in err


@pytest.mark.parametrize(
    "kind, order",
    [("sts", "9"), ("pts", "11"), ("gdd", "3"), ("headset", "13"), ("factorization", "7"), ("cocktail", "9"), ("mon4", "10")],
)
def test_designkit(capsys, kind, order):
    code, out, _ = run(capsys, "--format", "json", "designkit", kind, "--order", order)
    assert code == 0 and json.loads(out)


def test_help(capsys):
    assert run(capsys, "--help")[0] == 0
