"""JSON frame types exchanged with teleoperation clients.

Wire shape: every frame is a JSON object with a ``type`` discriminator. The
published schema (``docs/ws-schema.json``) is the contract the browser client
builds against; the parser here enforces the same rules.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Union

GROUPS = ("left_arm", "right_arm", "head", "platform", "leg")
BEHAVIOR_NAMES = ("center_head", "follow_person")
TILT_LIMIT_DEG = 90.0


class MessageError(ValueError):
    pass


# -- client -> server -----------------------------------------------------------


@dataclass(frozen=True)
class Select:
    group: str
    motor: int | tuple[int, int] | None = None

    def __post_init__(self):
        if self.group not in GROUPS:
            raise MessageError(f"unknown group {self.group!r}")
        if isinstance(self.motor, (list, tuple)):
            if len(self.motor) != 2 or not all(isinstance(m, int) and m >= 0 for m in self.motor):
                raise MessageError("motor pair must be two nonnegative indexes")
            object.__setattr__(self, "motor", tuple(self.motor))
        elif self.motor is not None:
            if not isinstance(self.motor, int) or self.motor < 0:
                raise MessageError("motor must be a nonnegative index")


@dataclass(frozen=True)
class Tilt:
    pitch_deg: float
    roll_deg: float

    def __post_init__(self):
        for name, value in (("pitch_deg", self.pitch_deg), ("roll_deg", self.roll_deg)):
            if not isinstance(value, (int, float)) or not -TILT_LIMIT_DEG <= value <= TILT_LIMIT_DEG:
                raise MessageError(f"{name} must be within +-{TILT_LIMIT_DEG:.0f} degrees")


@dataclass(frozen=True)
class SnapshotRequest:
    pass


@dataclass(frozen=True)
class TextCommand:
    text: str


@dataclass(frozen=True)
class BehaviorStart:
    name: str

    def __post_init__(self):
        if self.name not in BEHAVIOR_NAMES:
            raise MessageError(f"unknown behavior {self.name!r}")


@dataclass(frozen=True)
class BehaviorStop:
    pass


@dataclass(frozen=True)
class SyntheticDetection:
    offset_x: float
    offset_y: float
    apparent_size: float

    def __post_init__(self):
        if not -1.0 <= self.offset_x <= 1.0 or not -1.0 <= self.offset_y <= 1.0:
            raise MessageError("detection offsets must be within -1..1")
        if not 0.0 <= self.apparent_size <= 1.0:
            raise MessageError("apparent_size must be within 0..1")


ClientMessage = Union[Select, Tilt, SnapshotRequest, TextCommand,
                      BehaviorStart, BehaviorStop, SyntheticDetection]


def parse_client_message(text: str) -> ClientMessage:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MessageError(f"frame is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise MessageError("frame must be a JSON object")
    mtype = data.get("type")
    try:
        if mtype == "select":
            return Select(group=data["group"], motor=data.get("motor"))
        if mtype == "tilt":
            return Tilt(pitch_deg=data["pitch_deg"], roll_deg=data["roll_deg"])
        if mtype == "snapshot":
            return SnapshotRequest()
        if mtype == "text":
            text_value = data["text"]
            if not isinstance(text_value, str):
                raise MessageError("text must be a string")
            return TextCommand(text_value)
        if mtype == "behavior_start":
            return BehaviorStart(name=data["name"])
        if mtype == "behavior_stop":
            return BehaviorStop()
        if mtype == "detection":
            return SyntheticDetection(
                offset_x=data["offset_x"],
                offset_y=data["offset_y"],
                apparent_size=data["apparent_size"],
            )
    except KeyError as exc:
        raise MessageError(f"missing field {exc.args[0]!r} for {mtype!r}") from None
    raise MessageError(f"unknown message type {mtype!r}")


def client_message_to_dict(msg: ClientMessage) -> dict[str, Any]:
    if isinstance(msg, Select):
        out: dict[str, Any] = {"type": "select", "group": msg.group}
        if msg.motor is not None:
            out["motor"] = list(msg.motor) if isinstance(msg.motor, tuple) else msg.motor
        return out
    if isinstance(msg, Tilt):
        return {"type": "tilt", "pitch_deg": msg.pitch_deg, "roll_deg": msg.roll_deg}
    if isinstance(msg, SnapshotRequest):
        return {"type": "snapshot"}
    if isinstance(msg, TextCommand):
        return {"type": "text", "text": msg.text}
    if isinstance(msg, BehaviorStart):
        return {"type": "behavior_start", "name": msg.name}
    if isinstance(msg, BehaviorStop):
        return {"type": "behavior_stop"}
    if isinstance(msg, SyntheticDetection):
        return {"type": "detection", "offset_x": msg.offset_x,
                "offset_y": msg.offset_y, "apparent_size": msg.apparent_size}
    raise TypeError(f"not a client message: {msg!r}")


# -- server -> client -----------------------------------------------------------


@dataclass
class SnapshotData:
    joints: dict[str, list | None]  # sensor angles per scufy subsystem
    leg_height_cm: float | None
    platform_duty_pct: list | None  # [m1, m2] percent
    battery_v: float | None
    timestamp: float
    errors: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class Ack:
    detail: str = ""


@dataclass(frozen=True)
class ErrorMessage:
    text: str


@dataclass(frozen=True)
class BehaviorStatus:
    name: str
    state: str  # running | stopped | failed

    def __post_init__(self):
        if self.state not in ("running", "stopped", "failed"):
            raise MessageError(f"bad behavior state {self.state!r}")


ServerMessage = Union[SnapshotData, Ack, ErrorMessage, BehaviorStatus]


def server_message_to_dict(msg: ServerMessage) -> dict[str, Any]:
    if isinstance(msg, SnapshotData):
        return {
            "type": "snapshot",
            "joints": msg.joints,
            "leg_height_cm": msg.leg_height_cm,
            "platform_duty_pct": msg.platform_duty_pct,
            "battery_v": msg.battery_v,
            "timestamp": msg.timestamp,
            "errors": msg.errors,
        }
    if isinstance(msg, Ack):
        out: dict[str, Any] = {"type": "ack"}
        if msg.detail:
            out["detail"] = msg.detail
        return out
    if isinstance(msg, ErrorMessage):
        return {"type": "error", "text": msg.text}
    if isinstance(msg, BehaviorStatus):
        return {"type": "behavior_status", "name": msg.name, "state": msg.state}
    raise TypeError(f"not a server message: {msg!r}")


def server_message_to_json(msg: ServerMessage) -> str:
    return json.dumps(server_message_to_dict(msg))
