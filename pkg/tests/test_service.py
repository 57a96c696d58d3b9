import pytest
from fastapi.testclient import TestClient

from moledit.model import save_checkpoint
from moledit.service import create_app


@pytest.fixture(scope="module")
def client(vocab, tiny_model, tmp_path_factory):
    ckpt = tmp_path_factory.mktemp("svc") / "model.npz"
    save_checkpoint(ckpt, tiny_model)
    app = create_app(vocab, checkpoint_path=str(ckpt))
    return TestClient(app)


@pytest.fixture(scope="module")
def bare_client(vocab):
    return TestClient(create_app(vocab))


def test_tokenize_classes(client):
    r = client.post("/api/v1/tokenize", json={"name": "2-acetyloxybenzoic acid"})
    assert r.status_code == 200
    body = r.json()
    assert [t["surface"] for t in body["tokens"]] == [
        "2", "-", "acet", "yl", "oxy", "benzo", "ic acid"
    ]
    assert [t["class"] for t in body["tokens"]] == [
        "Locant", "Punctuation", "Group", "Group", "Group", "Group", "Group"
    ]
    assert [t["index"] for t in body["tokens"]] == list(range(7))
    assert body["hasUnknown"] is False


def test_tokenize_unknown_only(client):
    r = client.post("/api/v1/tokenize", json={"name": "☃☃☃"})
    assert r.status_code == 200
    body = r.json()
    assert len(body["tokens"]) == 1
    assert body["tokens"][0]["surface"] == "<unk>"
    assert body["hasUnknown"] is True


def test_tokenize_whitespace_rejected(client):
    assert client.post("/api/v1/tokenize", json={"name": "   "}).status_code == 422


def test_tokenize_malformed_body(client):
    r = client.post(
        "/api/v1/tokenize",
        content=b"not json",
        headers={"content-type": "application/json"},
    )
    assert r.status_code in (400, 422)


def test_vocab_summary(client, vocab):
    body = client.get("/api/v1/vocab").json()
    assert body["size"] >= 400
    assert body["size"] == vocab.size
    assert body["contentTokens"] == vocab.n_content
    assert body["version"] == vocab.version
    assert sum(body["classCounts"].values()) == vocab.n_content


def test_health_with_checkpoint(client):
    body = client.get("/api/v1/health").json()
    assert body["status"] == "ok"
    assert body["checkpointVersion"] == 1
    assert body["modelStep"] > 0


def test_health_without_checkpoint(bare_client):
    body = bare_client.get("/api/v1/health").json()
    assert body["status"] == "ok"
    assert "checkpointVersion" not in body


def test_infill_without_checkpoint(bare_client):
    r = bare_client.post(
        "/api/v1/infill",
        json={"name": "2-decylpentane", "spans": [[2, 2]], "targetBucket": "high"},
    )
    assert r.status_code == 409


def test_infill_basic(client):
    r = client.post(
        "/api/v1/infill",
        json={"name": "2-decyl-4-hydroxypentane", "spans": [[2, 2]],
              "targetBucket": "high"},
    )
    assert r.status_code == 200
    candidates = r.json()["candidates"]
    assert len(candidates) == 1  # greedy
    c = candidates[0]
    assert c["validity"] in (
        "Valid", "Identity", "SentinelMismatch", "RoundTripFail"
    )
    assert isinstance(c["propertyBefore"], float)
    assert (c["propertyAfter"] is not None) == (c["validity"] == "Valid")


def test_infill_overlapping_spans(client):
    r = client.post(
        "/api/v1/infill",
        json={"name": "2-decylpentane", "spans": [[0, 3], [2, 2]],
              "targetBucket": "low"},
    )
    assert r.status_code == 422
    assert "(0, 3)" in r.json()["detail"]


def test_infill_adjacent_spans(client):
    r = client.post(
        "/api/v1/infill",
        json={"name": "2-decylpentane", "spans": [[0, 2], [2, 1]],
              "targetBucket": "low"},
    )
    assert r.status_code == 422


def test_infill_out_of_range_span(client):
    r = client.post(
        "/api/v1/infill",
        json={"name": "2-decylpentane", "spans": [[5, 4]], "targetBucket": "low"},
    )
    assert r.status_code == 422


def test_infill_bad_bucket(client):
    r = client.post(
        "/api/v1/infill",
        json={"name": "2-decylpentane", "spans": [[2, 2]], "targetBucket": "max"},
    )
    assert r.status_code == 422


def test_infill_seeded_sampling_deterministic(client):
    req = {
        "name": "2-decyl-4-hydroxypentane",
        "spans": [[2, 2]],
        "targetBucket": "high",
        "decode": {"mode": "sample", "temperature": 1.0, "k": 4, "seed": 7},
    }
    a = client.post("/api/v1/infill", json=req)
    b = client.post("/api/v1/infill", json=req)
    assert a.content == b.content
    names = [c["name"] for c in a.json()["candidates"] if c["name"]]
    assert len(names) == len(set(names))  # deduplicated by name


def test_unknown_route(client):
    assert client.get("/api/v1/nothing").status_code == 404


def test_cors_headers(client):
    r = client.get("/api/v1/health", headers={"Origin": "http://localhost:5173"})
    assert r.headers.get("access-control-allow-origin") == "*"


def test_checkpoint_hot_swap(vocab, tiny_model, tmp_path):
    ckpt = tmp_path / "a.npz"
    save_checkpoint(ckpt, tiny_model)
    app = create_app(vocab)
    client = TestClient(app)
    assert "modelStep" not in client.get("/api/v1/health").json()
    app.state.swap_checkpoint(str(ckpt))
    assert client.get("/api/v1/health").json()["modelStep"] == tiny_model.step
