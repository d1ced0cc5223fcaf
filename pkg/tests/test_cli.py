import json

import pytest
from fastapi.testclient import TestClient

from grassdecode import cli
from grassdecode.client import HttpClient
from grassdecode.service.app import app

SPEC = {"q": 2, "ell": 2, "k": 2, "delta": 2, "modulus": [1, 1, 1], "g": ["01", "10"]}


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, body in {
        "code.json": json.dumps(SPEC),
        "big.json": json.dumps({"q": 2, "ell": 5, "k": 4, "delta": 1}),
        "received.txt": "# received word\n0 1 1 1\n1 0 0 1\n",
        "r1.txt": "1 0 1 0\n0 0 0 1\n",
        "a.txt": "0 1\n1 0\n",
        "u.txt": "1 0 0 1\n0 1 1 0\n",
        "x.txt": "1:1:1:1:0:1\n",
        "bad.txt": "1:0:0:0:0:1\n",
        "big_received.txt": "1 0 0 0 0 0 0 0 0\n",
    }.items():
        p = tmp_path / name
        p.write_text(body)
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_code_info(capsys, files):
    code, out, _ = run(capsys, "code", "info", "--spec", files["code.json"])
    assert code == 0
    assert "min subspace distance=4" in out


def test_code_enumerate_json(capsys, files):
    code, out, _ = run(capsys, "code", "enumerate", "--spec", files["code.json"], "--json")
    assert code == 0
    body = json.loads(out)
    assert [c["plucker"] for c in body["codewords"]] == ["1:0:0:0:0:0", "1:1:0:0:1:1", "1:0:1:1:1:1",
                                                         "1:1:1:1:0:1"]
    assert "text" not in body


def test_encode(capsys, files):
    code, out, _ = run(capsys, "encode", "--spec", files["code.json"], "--message", "01")
    assert code == 0 and out.strip() == "1 1\n0 1"


def test_lift(capsys, files):
    code, out, _ = run(capsys, "lift", "--matrix", files["a.txt"])
    assert code == 0 and out.strip() == "1 0 0 1\n0 1 1 0"


def test_plucker_embed_and_invert(capsys, files):
    code, out, _ = run(capsys, "plucker", "embed", "--input", files["u.txt"])
    assert code == 0 and out.strip().splitlines()[-1] == "1:1:0:0:1:1"
    code, out, _ = run(capsys, "plucker", "invert", "--input", files["x.txt"])
    assert code == 0 and out.strip() == "1 0 1 0\n0 1 1 1"
    code, _, err = run(capsys, "plucker", "invert", "--input", files["bad.txt"])
    assert code == 2 and "shuffle" in err


def test_ball_eqs(capsys, files):
    code, out, _ = run(capsys, "ball", "eqs", "--center", files["r1.txt"], "--metric", "subspace",
                       "--radius", "2", "--dim-k", "2")
    assert code == 0
    assert out.strip() == "# variables: x12 x13 x14 x23 x24 x34\n1 0 0 1 0 0"


@pytest.mark.parametrize("method", ["plucker", "rational", "oracle"])
def test_decode_json(capsys, files, method):
    code, out, _ = run(capsys, "decode", "--spec", files["code.json"], "--received", files["received.txt"],
                       "--method", method, "--metric", "subspace", "--radius", "2", "--json")
    assert code == 0
    body = json.loads(out)
    assert body["method"] == method and len(body["codewords"]) == 3


def test_bounds_always_json(capsys, files):
    code, out, _ = run(capsys, "bounds", "--spec", files["code.json"], "--metric", "subspace", "--radius", "2")
    assert code == 0
    assert json.loads(out)["lower_bound"] == {"numerator": 3, "denominator": 1}


def test_simulate(capsys, files):
    argv = ["simulate", "--spec", files["code.json"], "--deletions", "0", "--insertions", "1", "--trials", "20",
            "--seed", "7", "--method", "plucker", "--radius", "2", "--json"]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    body = json.loads(out)
    assert body["success_rate"] == 1.0 and len(body["trials"]) == 20
    _, again, _ = run(capsys, *argv)
    assert again == out


def test_invalid_input_exit_code(capsys, files, tmp_path):
    code, _, err = run(capsys, "lift", "--matrix", str(tmp_path / "missing.txt"))
    assert code == 2 and "cannot read" in err
    code, _, _ = run(capsys, "code", "info", "--spec", files["a.txt"])
    assert code == 2
    code, _, _ = run(capsys, "encode", "--spec", files["code.json"], "--message", "01 10")
    assert code == 2


def test_budget_exit_code(capsys, files):
    code, _, err = run(capsys, "decode", "--spec", files["big.json"], "--received", files["big_received.txt"],
                       "--method", "oracle", "--radius", "1")
    assert code == 3 and "budget" in err


def test_bad_choice_is_argparse_error(capsys, files):
    with pytest.raises(SystemExit) as e:
        cli.main(["decode", "--spec", files["code.json"], "--received", files["received.txt"],
                  "--metric", "hamming", "--radius", "1"])
    assert e.value.code == 2


def test_server_flag_routes_over_http(capsys, files, monkeypatch):
    with TestClient(app) as http:
        monkeypatch.setattr(cli, "HttpClient", lambda base: HttpClient(http=http))
        code, out, _ = run(capsys, "--server", "http://testserver", "decode", "--spec", files["code.json"],
                           "--received", files["received.txt"], "--radius", "2", "--json")
        assert code == 0 and len(json.loads(out)["codewords"]) == 3
        code, _, err = run(capsys, "--server", "http://testserver", "plucker", "invert", "--input",
                           files["bad.txt"])
        assert code == 2 and "400" in err
        code, _, _ = run(capsys, "--server", "http://testserver", "code", "enumerate", "--spec",
                         files["big.json"])
        assert code == 3
