"""Live steering service: one simulation per websocket session.

JSON text messages over a single websocket. Client commands carry an
``id`` and a ``type``; every command is answered by exactly one ack or
error. While running, the session emits ``tick_metrics`` events paced at
the requested speed; commands are only applied between ticks.

Sessions are paused on connect so the operator can set up the layout
before running. Outbound metrics go through a bounded buffer that drops
oldest-first if a client cannot keep up; simulation state is unaffected.
"""

from __future__ import annotations

import asyncio
import json
from collections import deque
from pathlib import Path

import numpy as np
from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.staticfiles import StaticFiles

from . import engine
from .calibration import CalibrationData, default_calibration
from .engine import Intervention, SimConfig, SimState
from .model import CRITERIA, MODES, VALUE_MAX

MAX_SPEED = 1000.0
HISTOGRAM_BINS = 10
OUTBOX_SIZE = 256

VIEWS = ("metrics", "agents", "layout", "priorities_histogram", "values_histogram", "replay_log")


class CommandError(Exception):
    pass


class SteeringSession:
    """Owns one simulation instance and its intervention replay log."""

    def __init__(self, calib: CalibrationData, config: SimConfig):
        self.state: SimState = engine.init(calib, config)
        self.paused = True
        self.speed = 10.0
        self.replay_log: list[dict] = []
        self.last_snapshot = None
        self.outbox: deque = deque(maxlen=OUTBOX_SIZE)

    def tick(self) -> dict:
        snap = engine.step(self.state)
        self.last_snapshot = snap
        message = {"type": "tick_metrics", **snap.to_dict()}
        self.outbox.append(message)
        return message

    def intervene(self, intervention: Intervention) -> None:
        at = self.state.tick
        engine.apply(self.state, intervention)
        self.replay_log.append({"at": at, **intervention.to_dict()})

    # -- snapshot views ----------------------------------------------------

    def view(self, name: str):
        if name == "metrics":
            return self.last_snapshot.to_dict() if self.last_snapshot else None
        if name == "agents":
            pop = self.state.population
            return [
                {
                    "id": i,
                    "mode": MODES[int(pop.current_mode[i])].label,
                    "satisfaction": float(pop.satisfaction[i]),
                    "distance": float(pop.distance[i]),
                }
                for i in range(len(pop))
            ]
        if name == "layout":
            return {
                m.label: {c.label: float(self.state.layout[m, c]) for c in CRITERIA} for m in MODES
            }
        if name == "priorities_histogram":
            return self._histograms(self.state.population.priorities[:, None, :].repeat(len(MODES), 1))
        if name == "values_histogram":
            pop = self.state.population
            if self.state.config.biases_enabled:
                values = np.clip(self.state.layout[None, :, :] * pop.filters, 0.0, VALUE_MAX)
            else:
                values = np.broadcast_to(self.state.layout, (len(pop), len(MODES), len(CRITERIA)))
            return self._histograms(values)
        if name == "replay_log":
            return list(self.replay_log)
        raise CommandError(f"unknown view: {name!r}")

    def _histograms(self, values: np.ndarray) -> dict:
        """10-bin histograms over [0, 100] of per-agent (mode, criterion)
        values, grouped by the agents' current mode."""
        pop = self.state.population
        out = {}
        for m in MODES:
            members = pop.current_mode == int(m)
            grids = values[members]
            out[m.label] = {
                c.label: np.histogram(grids[:, m, c], bins=HISTOGRAM_BINS, range=(0, 100))[0].tolist()
                if grids.size
                else [0] * HISTOGRAM_BINS
                for c in CRITERIA
            }
        return out

    # -- command dispatch --------------------------------------------------

    def handle(self, command: dict) -> list[dict]:
        """Apply one client command; returns the messages to send."""
        cmd_id = command.get("id")
        ctype = command.get("type")
        replies: list[dict] = []
        if ctype == "pause":
            self.paused = True
        elif ctype == "resume":
            self.paused = False
        elif ctype == "step":
            n = command.get("n", 1)
            if not isinstance(n, int) or n < 1:
                raise CommandError("step needs a positive integer n")
            for _ in range(n):
                self.tick()
        elif ctype == "set_speed":
            speed = command.get("ticks_per_second")
            if not isinstance(speed, (int, float)) or not 0 < speed <= MAX_SPEED:
                raise CommandError(f"ticks_per_second must be in (0, {MAX_SPEED:g}]")
            self.speed = float(speed)
        elif ctype == "intervene":
            payload = {k: v for k, v in command.items() if k not in ("id", "type")}
            try:
                self.intervene(Intervention.from_dict(payload))
            except ValueError as exc:
                raise CommandError(str(exc)) from None
        elif ctype == "reset_habits":
            self.intervene(Intervention(action="reset_habits"))
        elif ctype == "snapshot_request":
            view = command.get("view")
            replies.append({"type": "state_view", "id": cmd_id, "view": view, "payload": self.view(view)})
        else:
            raise CommandError(f"unknown command type: {ctype!r}")
        replies.append({"type": "ack", "id": cmd_id})
        return replies


async def _session_loop(ws: WebSocket, session: SteeringSession) -> None:
    while True:
        message = None
        if session.paused:
            message = await ws.receive_text()
        else:
            try:
                message = await asyncio.wait_for(ws.receive_text(), timeout=1.0 / session.speed)
            except asyncio.TimeoutError:
                session.tick()
        if message is not None:
            cmd_id = None
            try:
                command = json.loads(message)
                if not isinstance(command, dict):
                    raise CommandError("command must be a JSON object")
                cmd_id = command.get("id")
                replies = session.handle(command)
            except json.JSONDecodeError:
                replies = [{"type": "error", "id": None, "message": "malformed JSON"}]
            except CommandError as exc:
                replies = [{"type": "error", "id": cmd_id, "message": str(exc)}]
            for reply in replies:
                session.outbox.append(reply)
        while session.outbox:
            await ws.send_text(json.dumps(session.outbox.popleft()))


def create_app(
    calib: CalibrationData | None = None,
    config: SimConfig | None = None,
    assets_dir: str | Path | None = None,
) -> FastAPI:
    """Build the service; each websocket connection gets its own session."""
    calib = calib or default_calibration()
    base_config = config or SimConfig()
    app = FastAPI(title="modalsim steering service")

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket):
        await ws.accept()
        session = SteeringSession(calib, SimConfig.from_dict(base_config.to_dict()))
        try:
            await _session_loop(ws, session)
        except WebSocketDisconnect:
            pass

    if assets_dir is not None:
        app.mount("/", StaticFiles(directory=str(assets_dir), html=True), name="dashboard")
    return app


def serve(
    calib: CalibrationData | None = None,
    config: SimConfig | None = None,
    port: int = 8000,
    host: str = "127.0.0.1",
    assets_dir=None,
) -> None:
    import uvicorn

    uvicorn.run(create_app(calib, config, assets_dir), host=host, port=port)
