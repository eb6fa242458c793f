import hashlib
import json

import pytest
from fastapi.testclient import TestClient

from sonowork.service import create_app

CSV = b"x,y\n0.0,1.0\n1.0,2.0\n2.0,3.0\n3.0,2.5\n"


@pytest.fixture()
def client(tmp_path):
    app = create_app(data_dir=tmp_path / "data")
    with TestClient(app) as client:
        yield client


def upload(client, body=CSV, name="demo", **params):
    response = client.post("/api/datasets", params={"name": name, **params}, content=body)
    assert response.status_code == 201, response.text
    return response.json()


class TestDatasets:
    def test_upload_ok(self, client):
        payload = upload(client)
        assert payload["row_count"] == 4
        assert payload["columns"] == ["x", "y"]
        assert payload["id"]

    def test_upload_parse_error(self, client):
        response = client.post("/api/datasets", content=b"a,b\n1,2\n3,4,5")
        assert response.status_code == 400
        body = response.json()
        assert body["code"] == "ragged_rows"
        assert body["detail"]["row"] == 1
        assert "message" in body

    def test_duplicate_upload_gets_new_id(self, client):
        first = upload(client)
        second = upload(client)
        assert first["id"] != second["id"]

    def test_get_dataset(self, client):
        dataset_id = upload(client)["id"]
        response = client.get(f"/api/datasets/{dataset_id}")
        assert response.status_code == 200
        body = response.json()
        assert body["row_count"] == 4
        assert body["columns"][0]["name"] == "x"
        assert body["columns"][1]["values"] == [1.0, 2.0, 3.0, 2.5]

    def test_get_unknown_dataset(self, client):
        response = client.get("/api/datasets/nope")
        assert response.status_code == 404
        assert response.json()["code"] == "unknown_dataset"

    def test_nan_round_trips_as_null(self, client):
        dataset_id = upload(client, body=b"a,b\n1,\n2,5")["id"]
        body = client.get(f"/api/datasets/{dataset_id}").json()
        assert body["columns"][1]["values"][0] is None

    def test_list_datasets(self, client):
        upload(client, name="one")
        upload(client, name="two")
        names = {d["name"] for d in client.get("/api/datasets").json()}
        assert {"one", "two"} <= names


class TestSonify:
    def test_returns_riff(self, client):
        dataset_id = upload(client)["id"]
        response = client.post("/api/sonify", json={"dataset_id": dataset_id, "y_col": "y"})
        assert response.status_code == 200
        assert response.headers["content-type"] == "audio/wav"
        assert response.content[:4] == b"RIFF"
        # 4 points x 0.1 s at 44100 Hz
        assert len(response.content) == 44 + 2 * 4 * 4410

    def test_unknown_dataset(self, client):
        response = client.post("/api/sonify", json={"dataset_id": "missing", "y_col": "y"})
        assert response.status_code == 404

    def test_cut_out_of_range_names_step(self, client):
        dataset_id = upload(client)["id"]
        response = client.post("/api/sonify", json={
            "dataset_id": dataset_id,
            "y_col": "y",
            "transform": [{"op": "normalize"}, {"op": "cut", "lo": 0, "hi": 99}],
        })
        assert response.status_code == 422
        body = response.json()
        assert body["code"] == "pipeline_step_error"
        assert body["detail"]["step"] == 1

    def test_invalid_config(self, client):
        dataset_id = upload(client)["id"]
        response = client.post("/api/sonify", json={
            "dataset_id": dataset_id, "y_col": "y", "config": {"f_min": 5000, "f_max": 100},
        })
        assert response.status_code == 422
        assert response.json()["code"] == "invalid_config"

    def test_unknown_column(self, client):
        dataset_id = upload(client)["id"]
        response = client.post("/api/sonify", json={"dataset_id": dataset_id, "y_col": "flux"})
        assert response.status_code == 422
        assert response.json()["code"] == "unknown_column"

    def test_deterministic(self, client):
        dataset_id = upload(client)["id"]
        body = {"dataset_id": dataset_id, "y_col": "y", "transform": [{"op": "smooth", "window": 3}]}
        a = client.post("/api/sonify", json=body).content
        b = client.post("/api/sonify", json=body).content
        assert a == b


class TestPlot:
    def test_svg_polyline(self, client):
        dataset_id = upload(client)["id"]
        response = client.post("/api/plot", json={"dataset_id": dataset_id, "y_col": "y"})
        assert response.status_code == 200
        assert response.headers["content-type"].startswith("image/svg+xml")
        assert response.content.count(b"<polyline") == 1

    def test_unknown_dataset(self, client):
        response = client.post("/api/plot", json={"dataset_id": "missing", "y_col": "y"})
        assert response.status_code == 404

    def test_byte_identical(self, client):
        dataset_id = upload(client)["id"]
        body = {"dataset_id": dataset_id, "y_col": "y", "x_col": "x"}
        assert client.post("/api/plot", json=body).content == client.post("/api/plot", json=body).content


def create_session(client, **overrides):
    body = {"block": 1, "per_class_count": 1, "seed": 7, "modality": "audio_visual"}
    body.update(overrides)
    response = client.post("/api/training/sessions", json=body)
    assert response.status_code == 201, response.text
    return response.json()


def send_event(client, session_id, event, expect=200):
    response = client.post(f"/api/training/sessions/{session_id}/events", json=event)
    assert response.status_code == expect, response.text
    return response.json()


class TestTrainingSessions:
    def test_create_returns_state(self, client):
        payload = create_session(client)
        state = payload["state"]
        assert state["phase"] == "intro"
        assert state["total"] == 4
        assert len(state["stimuli"]) == 4
        assert {s["class"] for s in state["stimuli"]} == {"increasing", "decreasing", "sine", "square"}

    def test_same_seed_same_stimulus_audio(self, client):
        a = create_session(client, seed=7)
        b = create_session(client, seed=7)
        wav_a = client.get(f"/api/training/sessions/{a['id']}/stimulus").content
        wav_b = client.get(f"/api/training/sessions/{b['id']}/stimulus").content
        assert a["id"] != b["id"]
        assert wav_a == wav_b

    def test_keypress_during_intro_409(self, client):
        session_id = create_session(client)["id"]
        body = send_event(client, session_id, {"type": "key_press", "key": "up"}, expect=409)
        assert body["code"] == "illegal_event"

    def test_stimulus_endpoint_formats(self, client):
        session_id = create_session(client)["id"]
        wav = client.get(f"/api/training/sessions/{session_id}/stimulus")
        assert wav.status_code == 200 and wav.content[:4] == b"RIFF"
        svg = client.get(f"/api/training/sessions/{session_id}/stimulus", params={"format": "svg"})
        assert svg.status_code == 200 and b"<svg" in svg.content

    def test_report_before_completion_409(self, client):
        session_id = create_session(client)["id"]
        response = client.get(f"/api/training/sessions/{session_id}/report")
        assert response.status_code == 409
        assert response.json()["code"] == "not_completed"

    def test_unknown_session(self, client):
        assert client.get("/api/training/sessions/nope").status_code == 404
        assert client.post("/api/training/sessions/nope/events", json={"type": "begin"}).status_code == 404

    def test_invalid_event_type(self, client):
        session_id = create_session(client)["id"]
        send_event(client, session_id, {"type": "dance"}, expect=422)

    def _complete_session(self, client, session_id, state, keys_for):
        state = send_event(client, session_id, {"type": "begin"})["state"]
        while state["phase"] != "completed":
            state = send_event(client, session_id, {"type": "presentation_done"})["state"]
            stimulus_class = state["stimuli"][state["cursor"]]["class"]
            key = keys_for(stimulus_class)
            state = send_event(
                client, session_id,
                {"type": "key_press", "key": key, "latency_ms": 321.0},
            )["state"]
            state = send_event(client, session_id, {"type": "feedback_done"})["state"]
        return state

    def test_full_session_and_report(self, client):
        correct_key = {"increasing": "up", "decreasing": "down", "sine": "left", "square": "right"}
        payload = create_session(client, per_class_count=3)
        state = self._complete_session(client, payload["id"], payload["state"], lambda cls: correct_key[cls])
        assert len(state["responses"]) == 12
        report = client.get(f"/api/training/sessions/{payload['id']}/report")
        assert report.status_code == 200
        body = report.json()
        assert body["total"] == 12 and body["correct"] == 12
        assert body["overall_display"] == "100%"
        assert body["median_latency_ms"] == 321.0

    def test_partially_wrong_report_display_rounding(self, client):
        # 12 trials, 9 correct: 75.0% displays as 75%
        correct_key = {"increasing": "up", "decreasing": "down", "sine": "left", "square": "right"}
        wrong = {"count": 0}

        def answer(cls):
            if cls == "sine" and wrong["count"] < 3:
                wrong["count"] += 1
                return "up"
            return correct_key[cls]

        payload = create_session(client, per_class_count=3, seed=11)
        self._complete_session(client, payload["id"], payload["state"], answer)
        body = client.get(f"/api/training/sessions/{payload['id']}/report").json()
        assert body["total"] == 12 and body["correct"] == 9
        assert body["overall_display"] == "75%"
        assert body["per_class"]["sine"]["correct"] == 0

    def test_replay_allowed_and_disabled(self, client):
        session_id = create_session(client)["id"]
        send_event(client, session_id, {"type": "begin"})
        send_event(client, session_id, {"type": "presentation_done"})
        state = send_event(client, session_id, {"type": "replay"})["state"]
        assert state["phase"] == "presenting"
        assert state["responses"] == []

        locked = create_session(client, allow_replay=False)["id"]
        send_event(client, locked, {"type": "begin"})
        send_event(client, locked, {"type": "presentation_done"})
        body = send_event(client, locked, {"type": "replay"}, expect=409)
        assert body["code"] == "replay_disabled"

    def test_skip_intro_disabled(self, client):
        session_id = create_session(client, allow_skip_intro=False)["id"]
        body = send_event(client, session_id, {"type": "skip_intro"}, expect=409)
        assert body["code"] == "skip_disabled"

    def test_session_persisted_across_app_instances(self, client, tmp_path):
        session_id = create_session(client, seed=3)["id"]
        send_event(client, session_id, {"type": "begin"})
        send_event(client, session_id, {"type": "presentation_done"})
        # a fresh app over the same data dir sees the same session state
        other = TestClient(create_app(data_dir=tmp_path / "data"))
        state = other.get(f"/api/training/sessions/{session_id}").json()["state"]
        assert state["phase"] == "awaiting_response"
        assert state["cursor"] == 0


class TestServiceInvariants:
    def test_get_endpoints_do_not_mutate(self, client, tmp_path):
        dataset_id = upload(client)["id"]
        session_id = create_session(client)["id"]

        def state_hash():
            chunks = []
            for path in sorted((tmp_path / "data").rglob("*.json")):
                chunks.append(path.read_bytes())
            return hashlib.sha256(b"".join(chunks)).hexdigest()

        before = state_hash()
        client.get(f"/api/datasets/{dataset_id}")
        client.get("/api/datasets")
        client.get(f"/api/training/sessions/{session_id}")
        client.get(f"/api/training/sessions/{session_id}/stimulus")
        client.get(f"/api/training/sessions/{session_id}/report")  # 409, still a read
        assert state_hash() == before

    def test_no_temp_files_left_behind(self, client, tmp_path):
        session_id = create_session(client)["id"]
        send_event(client, session_id, {"type": "begin"})
        send_event(client, session_id, {"type": "presentation_done"})
        leftovers = list((tmp_path / "data").rglob("*.tmp"))
        assert leftovers == []

    def test_session_file_always_valid_json(self, client, tmp_path):
        session_id = create_session(client)["id"]
        send_event(client, session_id, {"type": "begin"})
        for path in (tmp_path / "data" / "sessions").glob("*.json"):
            json.loads(path.read_text())

    def test_error_body_shape(self, client):
        response = client.post("/api/sonify", json={"dataset_id": "missing", "y_col": "y"})
        body = response.json()
        assert set(body) == {"code", "message", "detail"}

    def test_malformed_body_error_shape(self, client):
        response = client.post("/api/sonify", json={"y_col": 42})
        assert response.status_code == 422
        body = response.json()
        assert set(body) == {"code", "message", "detail"}
        assert body["code"] == "invalid_request"

    def test_unknown_route_error_shape(self, client):
        response = client.get("/api/unknown")
        assert response.status_code == 404
        assert set(response.json()) == {"code", "message", "detail"}
