"""Tests for the network services: line-JSON protocol, TCP server, play API."""

import io
import json
import socket

from starlette.testclient import TestClient

from inquest.episode import Episode, EpisodeConfig, EpisodeRecord
from inquest.service import (
    PROTOCOL_VERSION,
    AgentProtocolServer,
    create_play_app,
    run_protocol_session,
)

START = {"type": "start", "difficulty": "fixed_map", "qtype": "existence",
         "seed": 21, "question_seed": 22, "mode": "test", "max_steps": 80}


def run_session(*frames) -> list[dict]:
    """Feed line frames to the protocol handler, return its output frames."""

    lines = "".join(json.dumps(f) + "\n" for f in frames)
    reader = io.StringIO(lines)
    writer = io.StringIO()
    run_protocol_session(reader, writer)
    return [json.loads(line) for line in writer.getvalue().splitlines()]


class TestProtocolSession:
    def test_handshake_frames(self):
        frames = run_session(START)
        assert [f["type"] for f in frames] == ["session", "obs"]
        session, obs = frames
        assert session["protocol"] == PROTOCOL_VERSION
        assert session["answer_candidates"] == ["yes", "no"]
        assert session["seed"] == 21
        assert sorted(session["lexicons"]) == ["actions", "modifiers", "objects"]
        assert obs["step"] == 0
        assert obs["steps_remaining"] == 80
        assert not obs["done"]

    def test_session_matches_local_episode(self):
        config = EpisodeConfig(difficulty="fixed_map", seed=21,
                               qtype="existence", question_seed=22)
        local = Episode(config)
        frames = run_session(START, {"type": "cmd", "text": "look"})
        assert frames[0]["question"] == local.question.text
        assert frames[1]["observation"] == local.initial_outcome.observation

    def test_commands_step_the_episode(self):
        frames = run_session(
            START,
            {"type": "cmd", "text": "go east"},
            {"type": "cmd", "text": "frobnicate"},
        )
        assert [f["type"] for f in frames] == ["session", "obs", "obs", "obs"]
        assert frames[3]["feedback"] == "That's not a verb I recognize."
        assert frames[3]["steps_remaining"] == 78

    def test_answer_returns_result(self):
        frames = run_session(
            START,
            {"type": "cmd", "text": "wait"},
            {"type": "answer", "token": "yes"},
        )
        result = frames[-1]
        assert result["type"] == "result"
        assert result["answer"] == "yes"
        assert result["ground_truth"] in ("yes", "no")
        assert result["correct"] == (result["ground_truth"] == "yes")
        assert "base" in result["sufficient_info"]

    def test_early_answer_is_an_error(self):
        frames = run_session(START, {"type": "answer", "token": "yes"})
        assert frames[-1]["type"] == "error"

    def test_train_mode_adds_signals(self):
        start = dict(START, mode="train")
        frames = run_session(start, {"type": "cmd", "text": "look"})
        for obs in frames[1:]:
            assert "train_only" in obs
            assert set(obs["train_only"]) == {"episodic_bonus", "valid_commands"}

    def test_test_mode_withholds_signals(self):
        frames = run_session(START, {"type": "cmd", "text": "look"})
        for obs in frames[1:]:
            assert "train_only" not in obs

    def test_bad_start_frame(self):
        frames = run_session({"type": "cmd", "text": "look"})
        assert frames == [{"protocol": PROTOCOL_VERSION, "type": "error",
                           "message": "first frame must have type 'start'"}]

    def test_bad_difficulty(self):
        frames = run_session({"type": "start", "difficulty": "nightmare"})
        assert frames[0]["type"] == "error"
        assert "nightmare" in frames[0]["message"]

    def test_bad_json_line(self):
        reader = io.StringIO(json.dumps(START) + "\n" + "{not json\n")
        writer = io.StringIO()
        run_protocol_session(reader, writer)
        frames = [json.loads(line) for line in writer.getvalue().splitlines()]
        assert frames[-1]["type"] == "error"
        assert frames[-1]["message"].startswith("bad JSON")

    def test_unknown_frame_type(self):
        frames = run_session(START, {"type": "quit"})
        assert frames[-1]["type"] == "error"

    def test_empty_input_writes_nothing(self):
        writer = io.StringIO()
        run_protocol_session(io.StringIO(""), writer)
        assert writer.getvalue() == ""

    def test_record_saved_after_answer(self, tmp_path):
        lines = "".join(json.dumps(f) + "\n" for f in (
            START,
            {"type": "cmd", "text": "wait"},
            {"type": "answer", "token": "no"},
        ))
        run_protocol_session(io.StringIO(lines), io.StringIO(),
                             record_dir=tmp_path)
        saved = list(tmp_path.glob("session-*.json"))
        assert len(saved) == 1
        record = EpisodeRecord.load(saved[0])
        assert record.final_answer == "no"


class TestTcpServer:
    def test_round_trip_over_socket(self):
        import threading

        server = AgentProtocolServer(port=0)
        thread = threading.Thread(target=server.serve_forever, daemon=True)
        thread.start()
        try:
            host, port = server.address
            with socket.create_connection((host, port), timeout=5) as conn:
                stream = conn.makefile("rw", encoding="utf-8")
                for frame in (START, {"type": "cmd", "text": "wait"},
                              {"type": "answer", "token": "no"}):
                    stream.write(json.dumps(frame) + "\n")
                    stream.flush()
                types = [json.loads(stream.readline())["type"]
                         for _ in range(4)]
            assert types == ["session", "obs", "obs", "result"]
        finally:
            server.shutdown()
            server.server_close()


class TestPlayApi:
    def make_client(self, **app_kwargs) -> TestClient:
        return TestClient(create_play_app(**app_kwargs))

    def start_session(self, client: TestClient, **overrides) -> dict:
        body = dict(START)
        body.pop("type")
        body.update(overrides)
        response = client.post("/sessions", json=body)
        assert response.status_code == 200
        return response.json()

    def test_healthz(self):
        response = self.make_client().get("/healthz")
        assert response.status_code == 200
        assert response.json()["ok"] is True

    def test_create_session_frame(self):
        session = self.start_session(self.make_client())
        assert session["type"] == "session"
        assert session["session_id"]
        assert session["question"]
        assert session["observation"]
        assert session["steps_remaining"] == 80

    def test_bad_request_is_400(self):
        response = self.make_client().post(
            "/sessions", json={"difficulty": "nightmare"})
        assert response.status_code == 400

    def test_websocket_play_and_answer(self):
        client = self.make_client()
        session = self.start_session(client)
        sid = session["session_id"]
        with client.websocket_connect(f"/sessions/{sid}/stream") as ws:
            first = ws.receive_json()
            assert first["type"] == "obs" and first["step"] == 0
            ws.send_text(json.dumps({"type": "cmd", "text": "look"}))
            obs = ws.receive_json()
            assert obs["step"] == 1
            assert obs["steps_remaining"] == 79
            ws.send_text(json.dumps({"type": "cmd", "text": "wait"}))
            done = ws.receive_json()
            assert done["done"]
        response = client.post(f"/sessions/{sid}/answer",
                               json={"token": "no"})
        assert response.status_code == 200
        result = response.json()
        assert result["type"] == "result"
        assert result["session_id"] == sid

    def test_websocket_rejects_unknown_session(self):
        client = self.make_client()
        try:
            with client.websocket_connect("/sessions/nope/stream") as ws:
                ws.receive_json()
            raise AssertionError("connection should have been closed")
        except Exception:
            pass

    def test_websocket_error_frames_keep_session_alive(self):
        client = self.make_client()
        session = self.start_session(client)
        sid = session["session_id"]
        with client.websocket_connect(f"/sessions/{sid}/stream") as ws:
            ws.receive_json()
            ws.send_text("{broken")
            assert ws.receive_json()["type"] == "error"
            ws.send_text(json.dumps({"type": "noise"}))
            assert ws.receive_json()["type"] == "error"
            ws.send_text(json.dumps({"type": "cmd", "text": "look"}))
            assert ws.receive_json()["type"] == "obs"

    def test_answer_guards(self):
        client = self.make_client()
        session = self.start_session(client)
        sid = session["session_id"]
        assert client.post("/sessions/zzz/answer",
                           json={"token": "no"}).status_code == 404
        assert client.post(f"/sessions/{sid}/answer",
                           json={}).status_code == 400
        early = client.post(f"/sessions/{sid}/answer", json={"token": "no"})
        assert early.status_code == 409, "episode is not done yet"
        with client.websocket_connect(f"/sessions/{sid}/stream") as ws:
            ws.receive_json()
            ws.send_text(json.dumps({"type": "cmd", "text": "wait"}))
            ws.receive_json()
        assert client.post(f"/sessions/{sid}/answer",
                           json={"token": "no"}).status_code == 200
        double = client.post(f"/sessions/{sid}/answer", json={"token": "no"})
        assert double.status_code == 409

    def test_record_endpoint(self):
        client = self.make_client()
        session = self.start_session(client)
        sid = session["session_id"]
        assert client.get("/sessions/zzz/record").status_code == 404
        assert client.get(f"/sessions/{sid}/record").status_code == 409
        with client.websocket_connect(f"/sessions/{sid}/stream") as ws:
            ws.receive_json()
            ws.send_text(json.dumps({"type": "cmd", "text": "go east"}))
            ws.receive_json()
            ws.send_text(json.dumps({"type": "cmd", "text": "wait"}))
            ws.receive_json()
        client.post(f"/sessions/{sid}/answer", json={"token": "no"})
        response = client.get(f"/sessions/{sid}/record")
        assert response.status_code == 200
        record = EpisodeRecord.from_dict(response.json())
        assert record.config.seed == 21
        assert [o.command for o in record.outcomes] == [None, "go east", "wait"]

    def test_server_record_matches_replayed_episode(self, tmp_path):
        client = self.make_client(record_dir=tmp_path)
        session = self.start_session(client)
        sid = session["session_id"]
        with client.websocket_connect(f"/sessions/{sid}/stream") as ws:
            ws.receive_json()
            for text in ("look", "inventory", "wait"):
                ws.send_text(json.dumps({"type": "cmd", "text": text}))
                ws.receive_json()
        client.post(f"/sessions/{sid}/answer", json={"token": "yes"})
        saved = EpisodeRecord.load(tmp_path / f"session-{sid}.json")
        from inquest.episode import verify_replay

        assert verify_replay(saved)

    def test_sessions_are_isolated(self):
        client = self.make_client()
        first = self.start_session(client, seed=100, question_seed=101)
        second = self.start_session(client, seed=100, question_seed=101)
        assert first["session_id"] != second["session_id"]
        assert first["question"] == second["question"]
        with client.websocket_connect(
                f"/sessions/{first['session_id']}/stream") as ws:
            ws.receive_json()
            ws.send_text(json.dumps({"type": "cmd", "text": "wait"}))
            assert ws.receive_json()["done"]
        with client.websocket_connect(
                f"/sessions/{second['session_id']}/stream") as ws:
            frame = ws.receive_json()
            assert not frame["done"], "stepping one session must not end another"

    def test_frontend_mount_serves_files(self, tmp_path):
        (tmp_path / "index.html").write_text("<h1>play</h1>")
        client = self.make_client(frontend_dir=tmp_path)
        response = client.get("/")
        assert response.status_code == 200
        assert "play" in response.text
        assert client.get("/healthz").status_code == 200, (
            "API routes must win over the static mount")
