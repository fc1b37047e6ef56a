"""WebSocket teleoperation server.

One session per WebSocket connection: the client selects a motor group,
streams tilt frames, requests snapshots, sends text commands and toggles
behaviors. All motion funnels through the rig's per-subsystem writer threads;
per-motor motion commands are rate limited to one per 100 ms regardless of
client flood, and superseded moves are simply dropped.
"""

from __future__ import annotations

import asyncio
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from starlette.concurrency import run_in_threadpool

from jenny5.teleop import messages
from jenny5.teleop.behaviors import BehaviorEngine, RateLimiter
from jenny5.teleop.messages import (
    Ack,
    BehaviorStart,
    BehaviorStop,
    ErrorMessage,
    MessageError,
    Select,
    ServerMessage,
    SnapshotRequest,
    SyntheticDetection,
    TextCommand,
    Tilt,
)
from jenny5.teleop.rig import (
    RigConfig,
    RobotRig,
    SCUFY_GROUPS,
    SubsystemUnavailableError,
)

PULSE_DURATION_S = 0.5
DUTY_MAX = 32767


def _clamp_duty(value: float) -> int:
    return int(max(-DUTY_MAX, min(DUTY_MAX, round(value))))


class Session:
    """Per-connection teleop state: selection, behavior engine, rate limiter."""

    def __init__(self, rig: RobotRig, config: RigConfig):
        self.rig = rig
        self.config = config
        self.selection: Select | None = None
        self.limiter = RateLimiter(config.rate_limit_s)
        self.engine = BehaviorEngine(rig, config.behaviors, config.gains, self.limiter)
        self._pulse_tasks: set[asyncio.Task] = set()

    async def handle(self, text: str) -> list[ServerMessage]:
        try:
            message = messages.parse_client_message(text)
        except MessageError as exc:
            return [ErrorMessage(str(exc))]
        try:
            return await self._dispatch(message)
        except SubsystemUnavailableError as exc:
            return [ErrorMessage(str(exc))]

    async def _dispatch(self, message) -> list[ServerMessage]:
        if isinstance(message, Select):
            return self._handle_select(message)
        if isinstance(message, Tilt):
            return self._handle_tilt(message)
        if isinstance(message, SnapshotRequest):
            snapshot = await run_in_threadpool(self.rig.snapshot)
            return [snapshot]
        if isinstance(message, TextCommand):
            return self._handle_text(message)
        if isinstance(message, BehaviorStart):
            return [self.engine.start(message.name)]
        if isinstance(message, BehaviorStop):
            status = self.engine.stop()
            return [status] if status else [Ack("no behavior running")]
        if isinstance(message, SyntheticDetection):
            status = self.engine.on_detection(message)
            return [status] if status else [Ack()]
        raise AssertionError(f"unhandled message {message!r}")  # union is closed

    def _handle_select(self, select: Select) -> list[ServerMessage]:
        subsystems = self.rig.subsystems()
        if select.group not in subsystems:
            return [ErrorMessage(f"subsystem {select.group!r} is not configured")]
        if select.group in SCUFY_GROUPS and select.motor is None:
            return [ErrorMessage(f"selecting {select.group!r} requires a motor index")]
        self.selection = select
        return [Ack(f"selected {select.group}")]

    def _handle_tilt(self, tilt: Tilt) -> list[ServerMessage]:
        if self.selection is None:
            return [ErrorMessage("no selection")]
        group = self.selection.group
        gains = self.config.gains
        if group in SCUFY_GROUPS:
            subsystem = self.rig.scufy[group]
            k = gains.steps_per_degree
            motor = self.selection.motor
            if isinstance(motor, tuple):
                a, b = motor
                steps_a = round(tilt.pitch_deg * k)
                steps_b = round(tilt.roll_deg * k)
                if (steps_a or steps_b) and self.limiter.allow(group, a) \
                        and self.limiter.allow(group, b):
                    subsystem.move_pair(a, steps_a, b, steps_b)
            else:
                steps = round(tilt.pitch_deg * k)
                if steps and self.limiter.allow(group, motor):
                    subsystem.move_motor(motor, steps)
            return [Ack()]
        if group == "platform":
            forward = tilt.pitch_deg * gains.platform_duty_per_degree
            turn = tilt.roll_deg * gains.platform_turn_duty_per_degree
            duty1 = _clamp_duty(forward + turn)
            duty2 = _clamp_duty(forward - turn)
            if self.limiter.allow("platform", 0) and self.limiter.allow("platform", 1):
                self.rig.roboclaw["platform"].set_duty(duty1, duty2,
                                                       gains.duty_acceleration)
            return [Ack()]
        if group == "leg":
            duty1 = _clamp_duty(tilt.pitch_deg * gains.leg_duty_per_degree)
            duty2 = _clamp_duty(tilt.roll_deg * gains.leg_duty_per_degree)
            if self.limiter.allow("leg", 0) and self.limiter.allow("leg", 1):
                self.rig.roboclaw["leg"].set_duty(duty1, duty2, gains.duty_acceleration)
            return [Ack()]
        return [ErrorMessage(f"group {group!r} cannot be tilt-driven")]

    def _handle_text(self, command: TextCommand) -> list[ServerMessage]:
        word = command.text.strip().lower()
        if not word:
            return [ErrorMessage("empty command")]
        if word == "stop":
            if self.engine.active:
                self.engine.stop()
            failures = self.rig.stop_everything()
            if failures:
                return [ErrorMessage(f"stop failed for: {', '.join(failures)}")]
            return [Ack("all motion stopped")]
        if word == "home":
            if self.selection is None or self.selection.group not in SCUFY_GROUPS:
                return [ErrorMessage("home needs a motor-group selection")]
            self.rig.scufy[self.selection.group].home_all()
            return [Ack(f"homing {self.selection.group}")]
        if word in ("forward", "back"):
            duty = self.config.gains.text_pulse_duty
            if word == "back":
                duty = -duty
            platform = self.rig.roboclaw.get("platform")
            if platform is None:
                return [ErrorMessage("platform is not configured")]
            platform.set_duty(duty, duty, self.config.gains.duty_acceleration)
            task = asyncio.create_task(self._end_pulse(platform))
            self._pulse_tasks.add(task)
            task.add_done_callback(self._pulse_tasks.discard)
            return [Ack(f"platform pulse {word}")]
        return [ErrorMessage(f"unknown command {command.text!r}")]

    async def _end_pulse(self, platform) -> None:
        await asyncio.sleep(PULSE_DURATION_S)
        try:
            platform.stop()
        except SubsystemUnavailableError:
            pass

    def shutdown(self) -> None:
        # safety: a vanished client must not leave behaviors driving motors
        if self.engine.active:
            self.engine.stop()
        for task in self._pulse_tasks:
            task.cancel()


def create_app(rig: RobotRig, config: RigConfig, web_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="jenny5 teleop")
    latest_snapshot: dict = {}

    @app.get("/healthz")
    def healthz():
        health = rig.health()
        status = "ok" if all(h["healthy"] for h in health.values()) else "degraded"
        return {"status": status, "subsystems": health}

    @app.get("/state")
    async def state():
        snapshot = await run_in_threadpool(rig.snapshot)
        payload = messages.server_message_to_dict(snapshot)
        latest_snapshot.clear()
        latest_snapshot.update(payload)
        return JSONResponse(payload)

    @app.websocket("/ws")
    async def ws_endpoint(websocket: WebSocket):
        await websocket.accept()
        session = Session(rig, config)
        try:
            while True:
                text = await websocket.receive_text()
                for response in await session.handle(text):
                    payload = messages.server_message_to_dict(response)
                    if payload.get("type") == "snapshot":
                        latest_snapshot.clear()
                        latest_snapshot.update(payload)
                    await websocket.send_text(messages.server_message_to_json(response))
        except WebSocketDisconnect:
            pass
        finally:
            session.shutdown()

    if web_dir is not None and Path(web_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(web_dir), html=True), name="web")

    return app
