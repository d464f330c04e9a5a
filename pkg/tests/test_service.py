import json
import threading

import pytest
from fastapi.testclient import TestClient

from spokenud import create_session, parse, save_session
from spokenud.service import create_app, status_for


@pytest.fixture
def session_path(example1_text, tmp_path):
    a = parse(example1_text.replace("8\texpl", "8\tdet"), source_name="a")
    b = parse(example1_text, source_name="b")
    session = create_session(a, b, ("ann1", "ann2"))
    path = tmp_path / "session.json"
    save_session(session, path)
    return path


@pytest.fixture
def client(session_path):
    return TestClient(create_app(session_path))


RESOLUTION = {"token_id": 7, "choice": "take_b"}


class TestReadEndpoints:
    def test_session_summary(self, client):
        data = client.get("/api/session").json()
        assert data == {"annotators": ["ann1", "ann2"], "sentence_count": 1,
                        "record_count": 1, "resolved_count": 0}

    def test_sentence_listing(self, client):
        rows = client.get("/api/sentences").json()
        assert len(rows) == 1
        assert rows[0]["sent_id"] == "fame-1"
        assert rows[0]["record_count"] == 1
        assert rows[0]["text"].startswith("benammen eh foarsitter")

    def test_disagreeing_filter(self, client):
        assert client.get("/api/sentences", params={"only": "disagreeing"}).json() != []

    def test_sentence_detail(self, client):
        data = client.get("/api/sentences/0").json()
        assert len(data["tokens_a"]) == len(data["tokens_b"]) == 11
        assert data["tokens_a"][6]["deprel"] == "det"
        assert data["tokens_b"][6]["deprel"] == "expl"
        assert data["tokens_a"][6]["lang"] == "fy"
        assert data["records"][0]["token_id"] == 7
        assert data["resolutions"] == []

    def test_unknown_sentence_404(self, client):
        response = client.get("/api/sentences/9")
        assert response.status_code == 404
        assert response.json()["code"] == "UNKNOWN_SENTENCE"

    def test_reads_are_idempotent(self, client):
        first = client.get("/api/progress").json()
        second = client.get("/api/progress").json()
        assert first == second == {"resolved": 0, "total": 1,
                                   "provisional": first["provisional"]}


class TestMutations:
    def test_post_then_progress(self, client):
        before = client.get("/api/progress").json()["resolved"]
        response = client.post("/api/sentences/0/resolutions", json=RESOLUTION)
        assert response.status_code == 200
        assert response.json()["choice"] == "take_b"
        after = client.get("/api/progress").json()["resolved"]
        assert after == before + 1

    def test_persisted_before_response(self, client, session_path):
        client.post("/api/sentences/0/resolutions", json=RESOLUTION)
        on_disk = json.loads(session_path.read_text())
        assert len(on_disk["resolutions"]) == 1

    def test_post_for_agreeing_token_404(self, client):
        response = client.post("/api/sentences/0/resolutions",
                               json={"token_id": 3, "choice": "take_a"})
        assert response.status_code == 404
        assert response.json()["code"] == "UNKNOWN_RECORD"

    def test_invalid_custom_head_422(self, client):
        response = client.post("/api/sentences/0/resolutions", json={
            "token_id": 7, "choice": "custom",
            "custom_values": {"upos": "PRON", "head": 99, "deprel": "expl"}})
        assert response.status_code == 422
        assert response.json()["code"] == "INVALID_CUSTOM_HEAD"

    def test_malformed_json_400(self, client):
        response = client.post("/api/sentences/0/resolutions",
                               content=b"{not json",
                               headers={"content-type": "application/json"})
        assert response.status_code == 400

    def test_bad_choice_400(self, client):
        response = client.post("/api/sentences/0/resolutions",
                               json={"token_id": 7, "choice": "take_c"})
        assert response.status_code == 400

    def test_delete_resolution(self, client, session_path):
        client.post("/api/sentences/0/resolutions", json=RESOLUTION)
        response = client.delete("/api/sentences/0/resolutions/7")
        assert response.status_code == 200
        assert client.get("/api/progress").json()["resolved"] == 0
        assert json.loads(session_path.read_text())["resolutions"] == []

    def test_delete_missing_resolution_404(self, client):
        assert client.delete("/api/sentences/0/resolutions/7").status_code == 404


class TestExport:
    def test_export_unresolved_409(self, client):
        response = client.get("/api/export")
        assert response.status_code == 409
        assert response.json()["code"] == "UNRESOLVED_REMAIN"

    def test_export_partial(self, client):
        response = client.get("/api/export", params={"allow_partial": "true"})
        assert response.status_code == 200
        assert "Unresolved=Yes" in response.text

    def test_export_after_resolution(self, client, example1_text):
        client.post("/api/sentences/0/resolutions", json=RESOLUTION)
        response = client.get("/api/export")
        assert response.status_code == 200
        assert response.headers["content-type"].startswith("text/plain")
        assert response.text == example1_text

    def test_export_contains_chosen_value(self, client):
        client.post("/api/sentences/0/resolutions", json=RESOLUTION)
        line7 = client.get("/api/export").text.splitlines()[8]
        assert line7.split("\t")[7] == "expl"


class TestDurability:
    def test_restart_preserves_mutation(self, session_path):
        first = TestClient(create_app(session_path))
        first.post("/api/sentences/0/resolutions", json=RESOLUTION)
        # a fresh app over the same file plays the role of a restarted process
        second = TestClient(create_app(session_path))
        data = second.get("/api/progress").json()
        assert data["resolved"] == 1
        detail = second.get("/api/sentences/0").json()
        assert detail["resolutions"][0]["choice"] == "take_b"

    def test_concurrent_posts_leave_consistent_file(self, session_path, example2_text):
        a = parse(example2_text, source_name="a")
        mutated = example2_text
        for old, new in [("12\tnsubj", "12\tobj"), ("12\taux", "12\tcop"),
                         ("12\tadvmod", "12\tobl")]:
            mutated = mutated.replace(old, new)
        b = parse(mutated, source_name="b")
        save_session(create_session(a, b, ("x", "y")), session_path)
        client = TestClient(create_app(session_path))
        token_ids = [r["token_id"] for r in
                     client.get("/api/sentences/0").json()["records"]]
        assert len(token_ids) == 3

        errors = []

        def resolve(token_id, choice):
            try:
                response = client.post("/api/sentences/0/resolutions",
                                       json={"token_id": token_id, "choice": choice})
                assert response.status_code == 200
            except Exception as exc:  # surfaced after join
                errors.append(exc)

        threads = [threading.Thread(target=resolve, args=(tid, choice))
                   for tid in token_ids for choice in ("take_a", "take_b")]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()
        assert errors == []
        on_disk = json.loads(session_path.read_text())
        assert len(on_disk["resolutions"]) == 3  # one winner per token
        assert client.get("/api/progress").json()["resolved"] == 3


class TestStatic:
    def test_root_serves_something(self, client):
        response = client.get("/")
        assert response.status_code == 200

    def test_status_mapping(self):
        assert status_for("UNKNOWN_RECORD") == 404
        assert status_for("INVALID_CUSTOM_HEAD") == 422
        assert status_for("INVALID_CHOICE") == 422
        assert status_for("UNRESOLVED_REMAIN") == 409
        assert status_for("EXPORT_INVALID_TREE") == 409
        assert status_for("BAD_SESSION_FILE") == 400
