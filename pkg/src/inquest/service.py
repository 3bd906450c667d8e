"""Network services: the line-JSON agent protocol and the HTTP play API.

The agent protocol is a newline-delimited JSON exchange meant for external
agent processes; it works identically over a TCP socket or stdio.  The play
API is a small FastAPI app for interactive clients: sessions are created
over HTTP, commands stream over a WebSocket, and the final answer is a
plain POST.
"""

from __future__ import annotations

import io
import json
import secrets
import socketserver
import sys
import threading
from pathlib import Path
from typing import IO, Optional

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse

from .episode import DEFAULT_MAX_STEPS, Episode, EpisodeConfig, EpisodeError
from .gen import DIFFICULTIES
from .questions import QUESTION_TYPES

PROTOCOL_VERSION = 1


class ProtocolError(Exception):
    """A client frame that violates the session protocol."""


def _random_seed() -> int:
    return secrets.randbits(63)


def _episode_from_request(data: dict) -> Episode:
    difficulty = data.get("difficulty", "fixed_map")
    qtype = data.get("qtype", "location")
    mode = data.get("mode", "test")
    if difficulty not in DIFFICULTIES:
        raise ProtocolError(f"unknown difficulty {difficulty!r}")
    if qtype not in QUESTION_TYPES:
        raise ProtocolError(f"unknown qtype {qtype!r}")
    if mode not in ("train", "test"):
        raise ProtocolError(f"unknown mode {mode!r}")
    seed = data.get("seed")
    question_seed = data.get("question_seed")
    max_steps = data.get("max_steps", DEFAULT_MAX_STEPS)
    if not isinstance(max_steps, int) or max_steps < 1:
        raise ProtocolError("max_steps must be a positive integer")
    config = EpisodeConfig(
        difficulty=difficulty,
        seed=seed if isinstance(seed, int) else _random_seed(),
        qtype=qtype,
        question_seed=question_seed if isinstance(question_seed, int) else _random_seed(),
        mode=mode,
        max_steps=max_steps,
    )
    return Episode(config)


def _obs_frame(episode: Episode, outcome) -> dict:
    frame = {
        "protocol": PROTOCOL_VERSION,
        "type": "obs",
        "step": outcome.step,
        "observation": outcome.observation,
        "feedback": outcome.feedback.text,
        "done": outcome.done,
        "steps_remaining": episode.steps_remaining,
    }
    if episode.config.mode == "train":
        frame["train_only"] = {
            "episodic_bonus": outcome.episodic_bonus,
            "valid_commands": outcome.valid_commands,
        }
    return frame


def _session_frame(episode: Episode) -> dict:
    return {
        "protocol": PROTOCOL_VERSION,
        "type": "session",
        "question": episode.question.text,
        "qtype": episode.question.qtype,
        "mode": episode.config.mode,
        "max_steps": episode.config.max_steps,
        "seed": episode.config.seed,
        "question_seed": episode.config.question_seed,
        "answer_candidates": episode.candidates(),
        "lexicons": episode.lexicons(),
    }


def _result_frame(record) -> dict:
    return {
        "protocol": PROTOCOL_VERSION,
        "type": "result",
        "answer": record.final_answer,
        "correct": record.answer_correct,
        "ground_truth": record.question.answer,
        "sufficient_info": record.sufficient_info.to_dict(),
    }


def run_protocol_session(reader: IO[str], writer: IO[str],
                         record_dir: Optional[Path | str] = None) -> None:
    """Serve one line-JSON session: start frame in, frames out until result.

    Malformed input earns an error frame and ends the session.
    """

    def send(frame: dict) -> None:
        writer.write(json.dumps(frame) + "\n")
        writer.flush()

    def fail(message: str) -> None:
        send({"protocol": PROTOCOL_VERSION, "type": "error", "message": message})

    line = reader.readline()
    if not line:
        return
    try:
        start = json.loads(line)
        if not isinstance(start, dict) or start.get("type") != "start":
            raise ProtocolError("first frame must have type 'start'")
        episode = _episode_from_request(start)
    except (json.JSONDecodeError, ProtocolError, ValueError) as error:
        fail(str(error))
        return

    send(_session_frame(episode))
    send(_obs_frame(episode, episode.initial_outcome))

    for line in reader:
        try:
            frame = json.loads(line)
        except json.JSONDecodeError as error:
            fail(f"bad JSON: {error}")
            return
        kind = frame.get("type")
        if kind == "cmd":
            text = frame.get("text")
            if not isinstance(text, str):
                fail("cmd frames need a string 'text'")
                return
            try:
                outcome = episode.step(text)
            except EpisodeError as error:
                fail(str(error))
                return
            send(_obs_frame(episode, outcome))
        elif kind == "answer":
            token = frame.get("token")
            if not isinstance(token, str):
                fail("answer frames need a string 'token'")
                return
            try:
                record = episode.answer(token)
            except EpisodeError as error:
                fail(str(error))
                return
            if record_dir is not None:
                directory = Path(record_dir)
                directory.mkdir(parents=True, exist_ok=True)
                record.save(directory / f"session-{secrets.token_hex(6)}.json")
            send(_result_frame(record))
            return
        else:
            fail(f"unknown frame type {kind!r}")
            return


class _AgentHandler(socketserver.StreamRequestHandler):
    def handle(self) -> None:
        text_in = io.TextIOWrapper(self.rfile, encoding="utf-8")
        text_out = io.TextIOWrapper(self.wfile, encoding="utf-8", write_through=True)
        run_protocol_session(text_in, text_out, record_dir=self.server.record_dir)


class AgentProtocolServer(socketserver.ThreadingTCPServer):
    """TCP server speaking the line-JSON agent protocol, one session per connection."""

    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, host: str = "127.0.0.1", port: int = 0,
                 record_dir: Optional[Path | str] = None) -> None:
        super().__init__((host, port), _AgentHandler)
        self.record_dir = record_dir

    @property
    def address(self) -> tuple[str, int]:
        return self.server_address[:2]


def serve_stdio(record_dir: Optional[Path | str] = None) -> None:
    """Serve exactly one protocol session on stdin and stdout."""

    run_protocol_session(sys.stdin, sys.stdout, record_dir=record_dir)


# ---------------------------------------------------------------------------
# HTTP + WebSocket play API


def create_play_app(record_dir: Optional[Path | str] = None,
                    frontend_dir: Optional[Path | str] = None):
    """Build the FastAPI app serving interactive play sessions."""

    app = FastAPI(title="inquest play service")
    sessions: dict[str, dict] = {}
    sessions_lock = threading.Lock()

    def get_session(session_id: str) -> dict:
        with sessions_lock:
            session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return session

    @app.get("/healthz")
    def healthz() -> dict:
        return {"ok": True, "protocol": PROTOCOL_VERSION}

    @app.post("/sessions")
    def create_session(body: dict) -> dict:
        try:
            episode = _episode_from_request(body or {})
        except (ProtocolError, ValueError) as error:
            raise HTTPException(status_code=400, detail=str(error))
        session_id = secrets.token_hex(8)
        with sessions_lock:
            sessions[session_id] = {
                "episode": episode,
                "record": None,
                "lock": threading.Lock(),
            }
        frame = _session_frame(episode)
        frame.update(
            session_id=session_id,
            observation=episode.initial_outcome.observation,
            done=False,
            steps_remaining=episode.steps_remaining,
        )
        frame["type"] = "session"
        return frame

    @app.websocket("/sessions/{session_id}/stream")
    async def stream(websocket: WebSocket, session_id: str) -> None:
        with sessions_lock:
            session = sessions.get(session_id)
        if session is None:
            await websocket.close(code=4404)
            return
        await websocket.accept()
        episode: Episode = session["episode"]
        await websocket.send_json(_obs_frame(episode, episode.outcomes[-1]))
        try:
            while True:
                raw = await websocket.receive_text()
                try:
                    frame = json.loads(raw)
                except json.JSONDecodeError:
                    await websocket.send_json(
                        {"protocol": PROTOCOL_VERSION, "type": "error",
                         "message": "bad JSON"}
                    )
                    continue
                if frame.get("type") != "cmd" or not isinstance(frame.get("text"), str):
                    await websocket.send_json(
                        {"protocol": PROTOCOL_VERSION, "type": "error",
                         "message": "expected {'type': 'cmd', 'text': ...}"}
                    )
                    continue
                with session["lock"]:
                    try:
                        outcome = episode.step(frame["text"])
                    except EpisodeError as error:
                        await websocket.send_json(
                            {"protocol": PROTOCOL_VERSION, "type": "error",
                             "message": str(error)}
                        )
                        continue
                await websocket.send_json(_obs_frame(episode, outcome))
        except WebSocketDisconnect:
            return

    @app.post("/sessions/{session_id}/answer")
    def answer(session_id: str, body: dict) -> dict:
        session = get_session(session_id)
        token = (body or {}).get("token")
        if not isinstance(token, str):
            raise HTTPException(status_code=400, detail="need a string 'token'")
        with session["lock"]:
            if session["record"] is not None:
                raise HTTPException(status_code=409, detail="session already answered")
            episode: Episode = session["episode"]
            try:
                record = episode.answer(token)
            except EpisodeError as error:
                raise HTTPException(status_code=409, detail=str(error))
            session["record"] = record
        if record_dir is not None:
            directory = Path(record_dir)
            directory.mkdir(parents=True, exist_ok=True)
            record.save(directory / f"session-{session_id}.json")
        frame = _result_frame(record)
        frame["session_id"] = session_id
        return frame

    @app.get("/sessions/{session_id}/record")
    def get_record(session_id: str):
        session = get_session(session_id)
        record = session["record"]
        if record is None:
            raise HTTPException(status_code=409, detail="session not answered yet")
        return JSONResponse(record.to_dict())

    if frontend_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(frontend_dir), html=True),
                  name="frontend")

    return app
