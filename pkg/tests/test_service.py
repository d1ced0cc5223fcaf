import pytest
from fastapi.testclient import TestClient

from grassdecode.client import HttpClient, LocalClient, RemoteBudgetExceeded
from grassdecode.errors import BudgetExceededError, InvalidInputError
from grassdecode.service.app import app
from grassdecode.service.handlers import ROUTES

SPEC = {"q": 2, "ell": 2, "k": 2, "delta": 2, "modulus": [1, 1, 1], "g": ["01", "10"]}
BIG = {"q": 2, "ell": 5, "k": 4, "delta": 1}

REQUESTS = {
    "code_info": {"spec": SPEC},
    "code_enumerate": {"spec": SPEC},
    "encode": {"spec": SPEC, "message": ["01"]},
    "lift": {"matrix": "0 1\n1 0"},
    "plucker_embed": {"matrix": "1 0 0 1\n0 1 1 0"},
    "plucker_invert": {"vector": "1:1:1:1:0:1"},
    "ball_eqs": {"center": "1 0 1 0\n0 0 0 1", "metric": "subspace", "radius": 2, "dim_k": 2},
    "decode": {"spec": SPEC, "received": "1 0 0 1\n0 1 1 1", "method": "plucker", "metric": "subspace",
               "radius": 2},
    "bounds": {"spec": SPEC, "metric": "subspace", "radius": 2},
    "simulate": {"spec": SPEC, "deletions": 0, "insertions": 1, "trials": 5, "seed": 3, "radius": 2},
}


@pytest.fixture(scope="module")
def http():
    with TestClient(app) as c:
        yield c


def test_health(http):
    r = http.get("/health")
    assert r.status_code == 200 and r.json()["status"] == "ok"


def test_every_route_is_covered():
    assert set(REQUESTS) == set(ROUTES)


@pytest.mark.parametrize("name", sorted(REQUESTS))
def test_http_matches_in_process(http, name):
    path = ROUTES[name][0]
    r = http.post(path, json=REQUESTS[name])
    assert r.status_code == 200, r.text
    assert r.json() == LocalClient().call(name, REQUESTS[name])
    assert "text" in r.json()


def test_decode_payload(http):
    body = http.post("/decode", json=REQUESTS["decode"]).json()
    assert body["codewords"] == [[[1, 0, 0, 1], [0, 1, 1, 0]], [[1, 0, 1, 0], [0, 1, 1, 1]],
                                 [[1, 0, 1, 1], [0, 1, 0, 1]]]
    assert body["method"] == "plucker" and len(body["solutions"]) == 3


def test_encode_payload(http):
    assert http.post("/encode", json=REQUESTS["encode"]).json()["rows"] == [[1, 1], [0, 1]]


def test_bounds_payload(http):
    body = http.post("/bounds", json=REQUESTS["bounds"]).json()
    assert body["lower_bound"] == {"numerator": 3, "denominator": 1}


def test_invalid_input_is_400(http):
    r = http.post("/plucker/invert", json={"vector": "1:0:0:0:0:1"})
    assert r.status_code == 400
    assert r.json()["error"] == "invalid_input" and "shuffle" in r.json()["detail"]


def test_schema_violation_is_422(http):
    r = http.post("/decode", json={**REQUESTS["decode"], "metric": "hamming"})
    assert r.status_code == 422


def test_budget_is_413(http):
    payload = {"spec": BIG, "received": "1 0 0 0 0 0 0 0 0", "method": "oracle", "metric": "subspace",
               "radius": 1}
    r = http.post("/decode", json=payload)
    assert r.status_code == 413
    assert r.json()["error"] == "budget_exceeded"


def test_http_client_maps_errors(http):
    client = HttpClient(http=http)
    assert client.call("lift", REQUESTS["lift"])["rows"] == [[1, 0, 0, 1], [0, 1, 1, 0]]
    with pytest.raises(InvalidInputError, match="400"):
        client.call("plucker_invert", {"vector": "1:0:0:0:0:1"})
    with pytest.raises(InvalidInputError, match="422"):
        client.call("decode", {**REQUESTS["decode"], "radius": -1})
    with pytest.raises(RemoteBudgetExceeded) as e:
        client.call("code_enumerate", {"spec": BIG})
    assert isinstance(e.value, BudgetExceededError)


def test_local_client_validation_error_is_invalid_input():
    with pytest.raises(InvalidInputError):
        LocalClient().call("decode", {"spec": SPEC})
