import pytest
from fastapi.testclient import TestClient

from atc.service import create_app
from tests.conftest import COFFEE, COFFEE_BROKEN, COFFEE_INITIAL


@pytest.fixture
def client(tmp_path):
    app = create_app(tmp_path / "data")
    with TestClient(app) as c:
        yield c


@pytest.fixture
def session(client):
    theory = client.post("/api/theories", json={"text": COFFEE}).json()
    sess = client.post("/api/sessions", json={"theoryId": theory["id"]}).json()
    return theory, sess


def test_post_theory_reports_modularity(client):
    res = client.post("/api/theories", json={"text": COFFEE})
    assert res.status_code == 200
    doc = res.json()
    assert doc["modular"] is True and doc["implicitLaws"] == []

    res = client.post("/api/theories", json={"text": COFFEE_BROKEN})
    doc = res.json()
    assert doc["modular"] is False
    assert doc["implicitLaws"][0] == "token"


def test_post_theory_parse_error(client):
    res = client.post("/api/theories", json={"text": "theory t\nstatic p\n"})
    assert res.status_code == 400
    assert "error" in res.json()


def test_get_theory_roundtrip(client):
    doc = client.post("/api/theories", json={"text": COFFEE}).json()
    res = client.get(f"/api/theories/{doc['id']}")
    assert res.status_code == 200
    assert res.json()["text"] == COFFEE
    assert client.get("/api/theories/nope").status_code == 404


def test_contract_select_roundtrip(client, session):
    theory, sess = session
    sid = sess["id"]
    res = client.post(
        f"/api/sessions/{sid}/contract", json={"law": "exec token => <buy>"}
    )
    assert res.status_code == 200
    cands = res.json()["candidates"]
    assert len(cands) == 3
    for cand in cands:
        assert set(cand) >= {"id", "theory", "diff", "modelGraph", "provenance"}
        # the diff highlights the weakened executability
        assert cand["diff"]["modified"], cand["diff"]
        before = cand["diff"]["modified"][0]["before"]
        assert before == "exec token => <buy>"
        assert cand["provenance"]["context"]

    res = client.post(f"/api/sessions/{sid}/select", json={"candidateId": "c1"})
    assert res.status_code == 200
    state = res.json()
    assert len(state["history"]) == 1
    assert state["pending"] is None
    # the session's current theory equals the selected candidate
    assert state["currentTheory"] == cands[1]["theory"]

    # the model view is the Fig-5-style contracted model: the buy arrow of the
    # chosen context is gone
    model = client.get(f"/api/sessions/{sid}/model").json()
    assert model["kind"] == "contracted"
    assert len(model["model"]["relations"]["buy"]) == 2
    # after undo the view falls back to the canonical model of the base theory
    client.post(f"/api/sessions/{sid}/undo")
    model = client.get(f"/api/sessions/{sid}/model").json()
    assert model["kind"] == "canonical"
    assert len(model["model"]["relations"]["buy"]) == 3


def test_select_without_pending_is_409(client, session):
    _, sess = session
    res = client.post(
        f"/api/sessions/{sess['id']}/select", json={"candidateId": "c0"}
    )
    assert res.status_code == 409


def test_select_stale_candidate_is_409(client, session):
    _, sess = session
    sid = sess["id"]
    client.post(f"/api/sessions/{sid}/contract", json={"law": "exec token => <buy>"})
    res = client.post(f"/api/sessions/{sid}/select", json={"candidateId": "c99"})
    assert res.status_code == 409


def test_malformed_law_is_400(client, session):
    _, sess = session
    res = client.post(
        f"/api/sessions/{sess['id']}/contract", json={"law": "exec token =>"}
    )
    assert res.status_code == 400
    assert "law" in res.json()["error"]


def test_unknown_session_404(client):
    assert client.get("/api/sessions/zzz").status_code == 404
    assert client.post("/api/sessions", json={"theoryId": "zzz"}).status_code == 404


def test_undo_restores_previous_theory(client, session):
    theory, sess = session
    sid = sess["id"]
    client.post(f"/api/sessions/{sid}/contract", json={"law": "exec token => <buy>"})
    before = client.get(f"/api/sessions/{sid}").json()["currentTheory"]
    client.post(f"/api/sessions/{sid}/select", json={"candidateId": "c0"})
    res = client.post(f"/api/sessions/{sid}/undo")
    assert res.status_code == 200
    state = res.json()
    assert state["currentTheory"] == before
    assert state["history"] == []
    assert client.post(f"/api/sessions/{sid}/undo").status_code == 409


def test_revise_single_candidate(client):
    theory = client.post("/api/theories", json={"text": COFFEE_INITIAL}).json()
    sess = client.post("/api/sessions", json={"theoryId": theory["id"]}).json()
    sid = sess["id"]
    res = client.post(
        f"/api/sessions/{sid}/revise", json={"law": "effect token => [buy] ~token"}
    )
    assert res.status_code == 200
    cands = res.json()["candidates"]
    assert len(cands) == 1  # unique minimal revision
    assert cands[0]["modelGraph"]["kind"] == "revised"
    res = client.post(f"/api/sessions/{sid}/select", json={"candidateId": "c0"})
    assert res.status_code == 200


def test_revise_non_modular_is_422(client):
    theory = client.post("/api/theories", json={"text": COFFEE_BROKEN}).json()
    sess = client.post("/api/sessions", json={"theoryId": theory["id"]}).json()
    res = client.post(
        f"/api/sessions/{sess['id']}/revise",
        json={"law": "effect token => [buy] ~token"},
    )
    assert res.status_code == 422


def test_model_for_non_modular_is_biggest(client):
    theory = client.post("/api/theories", json={"text": COFFEE_BROKEN}).json()
    sess = client.post("/api/sessions", json={"theoryId": theory["id"]}).json()
    model = client.get(f"/api/sessions/{sess['id']}/model").json()
    assert model["kind"] == "biggest"


def test_crash_safety_replay(tmp_path, session_factory=None):
    data = tmp_path / "data"
    app = create_app(data)
    with TestClient(app) as client:
        theory = client.post("/api/theories", json={"text": COFFEE}).json()
        sess = client.post("/api/sessions", json={"theoryId": theory["id"]}).json()
        sid = sess["id"]
        client.post(
            f"/api/sessions/{sid}/contract", json={"law": "exec token => <buy>"}
        )
        client.post(f"/api/sessions/{sid}/select", json={"candidateId": "c2"})
        state = client.get(f"/api/sessions/{sid}").json()

    # a fresh app over the same data directory replays to the same state
    app2 = create_app(data)
    with TestClient(app2) as client2:
        replayed = client2.get(f"/api/sessions/{sid}").json()
        assert replayed == state
        # pending candidates also survive a restart
        client2.post(
            f"/api/sessions/{sid}/contract", json={"law": "effect token => [buy] hot"}
        )
    app3 = create_app(data)
    with TestClient(app3) as client3:
        res = client3.post(
            f"/api/sessions/{sid}/select", json={"candidateId": "c0"}
        )
        assert res.status_code == 200
