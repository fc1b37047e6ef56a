"""Board configuration: the JSON config family shared by the shipped presets.

A board file describes the physical side of one subsystem (firmware version,
joint bindings, sensor defaults, ultrasonic scenario, tick rate) plus the
host-side wiring hints (pins, attach specs, per-motor speed/acceleration)
that a controller uses to bring the subsystem up.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from jenny5.firmware.motion import DEFAULT_ACCELERATION, DEFAULT_SPEED, JointBinding


@dataclass(frozen=True)
class AttachPreset:
    """Host-side attach spec for one motor: guard band, home and direction."""

    motor: int
    sensor: int
    end1: int
    end2: int
    home: int
    direction: int = 1


@dataclass
class BoardConfig:
    name: str = "board"
    firmware_version: str = "2019.05.10.0"
    tick_rate_hz: float = 200.0
    default_speed: float = DEFAULT_SPEED
    default_acceleration: float = DEFAULT_ACCELERATION
    servo_home: int = 90
    bindings: list[JointBinding] = field(default_factory=list)
    sensor_defaults: dict[int, float] = field(default_factory=dict)
    ultrasonic_cm: dict[int, int] = field(default_factory=dict)
    ultrasonic_default_cm: int = 100
    # host-side wiring hints
    stepper_dir_pins: list[int] = field(default_factory=list)
    stepper_step_pins: list[int] = field(default_factory=list)
    stepper_enable_pins: list[int] = field(default_factory=list)
    as5147_pins: list[int] = field(default_factory=list)
    servo_pins: list[int] = field(default_factory=list)
    attach: list[AttachPreset] = field(default_factory=list)
    speed_accel: list[tuple[int, int]] = field(default_factory=list)  # per motor

    @property
    def dt(self) -> float:
        return 1.0 / self.tick_rate_hz

    @property
    def stepper_count(self) -> int:
        return len(self.stepper_dir_pins)


def _ratio(value) -> float:
    """units_per_step may be a number or an exact-ratio string like '63/5875'."""
    if isinstance(value, str):
        return float(Fraction(value))
    return float(value)


def board_config_from_dict(data: dict) -> BoardConfig:
    steppers = data.get("steppers", {})
    bindings = [
        JointBinding(
            motor_index=b["motor"],
            sensor_index=b["sensor"],
            units_per_step=_ratio(b["units_per_step"]),
            sensor_offset=float(b.get("offset", 0.0)),
            direction=int(b.get("direction", 1)),
        )
        for b in data.get("bindings", [])
    ]
    attach = [
        AttachPreset(
            motor=a["motor"],
            sensor=a["sensor"],
            end1=int(a["end1"]),
            end2=int(a["end2"]),
            home=int(a["home"]),
            direction=int(a.get("direction", 1)),
        )
        for a in data.get("attach", [])
    ]
    return BoardConfig(
        name=data.get("name", "board"),
        firmware_version=data.get("firmware_version", "2019.05.10.0"),
        tick_rate_hz=float(data.get("tick_rate_hz", 200.0)),
        default_speed=float(data.get("default_speed", DEFAULT_SPEED)),
        default_acceleration=float(data.get("default_acceleration", DEFAULT_ACCELERATION)),
        servo_home=int(data.get("servo_home", 90)),
        bindings=bindings,
        sensor_defaults={int(k): float(v) for k, v in data.get("sensor_defaults", {}).items()},
        ultrasonic_cm={int(k): int(v) for k, v in data.get("ultrasonic_cm", {}).items()},
        ultrasonic_default_cm=int(data.get("ultrasonic_default_cm", 100)),
        stepper_dir_pins=list(steppers.get("dir_pins", [])),
        stepper_step_pins=list(steppers.get("step_pins", [])),
        stepper_enable_pins=list(steppers.get("enable_pins", [])),
        as5147_pins=list(data.get("as5147_pins", [])),
        servo_pins=list(data.get("servo_pins", [])),
        attach=attach,
        speed_accel=[(int(s), int(a)) for s, a in data.get("speed_accel", [])],
    )


def load_board_config(path: str | Path) -> BoardConfig:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("kind", "scufy-board") != "scufy-board":
        raise ValueError(f"{path}: not a scufy-board config (kind={data.get('kind')!r})")
    return board_config_from_dict(data)
