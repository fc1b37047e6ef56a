"""Emulated dual-channel motor board.

State per channel: a PWM value that legacy speed commands set instantly and
duty commands slew toward their target at the commanded acceleration
(duty units per second); a current-draw model proportional to |PWM| and
clamped by the configured limit; optionally a linear actuator whose stroke
fraction integrates the PWM (the leg).
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from pathlib import Path

from jenny5.model import LinearActuatorSpec
from jenny5.roboclaw import packets
from jenny5.roboclaw.packets import Opcode


@dataclass
class EmulatorConfig:
    name: str = "roboclaw"
    address: int = packets.DEFAULT_ADDRESS
    firmware_version: str = "USB Roboclaw 2x15a v4.1.34"
    main_battery_v: float = 16.8
    temperature_c: float = 34.5
    max_current_a: tuple[float, float] = (15.0, 15.0)
    load_full_duty_amps: float = 5.0  # scenario: current drawn at 100% duty
    tick_rate_hz: float = 200.0
    actuator: LinearActuatorSpec | None = None  # attached to both channels

    def __post_init__(self):
        if len(self.firmware_version.encode("ascii")) + 2 > packets.VERSION_MAX_BYTES:
            raise ValueError("firmware version exceeds 48 bytes with terminators")

    @property
    def dt(self) -> float:
        return 1.0 / self.tick_rate_hz


def emulator_config_from_dict(data: dict) -> EmulatorConfig:
    actuator = None
    if "actuator" in data:
        a = data["actuator"]
        actuator = LinearActuatorSpec(
            force_n=float(a.get("force_n", 750)),
            stroke_mm=float(a.get("stroke_mm", 100)),
            full_travel_s=float(a.get("full_travel_s", 7)),
            min_height_cm=float(a.get("min_height_cm", 35)),
            max_height_cm=float(a.get("max_height_cm", 95)),
        )
    max_current = data.get("max_current_a", [15.0, 15.0])
    return EmulatorConfig(
        name=data.get("name", "roboclaw"),
        address=int(data.get("address", packets.DEFAULT_ADDRESS)),
        firmware_version=data.get("firmware_version", "USB Roboclaw 2x15a v4.1.34"),
        main_battery_v=float(data.get("main_battery_v", 16.8)),
        temperature_c=float(data.get("temperature_c", 34.5)),
        max_current_a=(float(max_current[0]), float(max_current[1])),
        load_full_duty_amps=float(data.get("load_full_duty_amps", 5.0)),
        tick_rate_hz=float(data.get("tick_rate_hz", 200.0)),
        actuator=actuator,
    )


def load_emulator_config(path: str | Path) -> EmulatorConfig:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("kind", "roboclaw-board") != "roboclaw-board":
        raise ValueError(f"{path}: not a roboclaw-board config (kind={data.get('kind')!r})")
    return emulator_config_from_dict(data)


@dataclass
class ChannelSim:
    pwm: float = 0.0  # -32767..32767
    target: float = 0.0
    slew_per_s: float | None = None  # None: next tick snaps to target
    max_current_raw: int = 1500  # 10 mA units
    fraction: float = 0.0  # linear actuator stroke position, 0..1

    def set_instant(self, pwm: float) -> None:
        self.pwm = self.target = float(pwm)
        self.slew_per_s = None

    def set_ramped(self, duty: int, acceleration: int) -> None:
        self.target = float(duty)
        # acceleration 0 is treated as "apply immediately"
        self.slew_per_s = float(acceleration) if acceleration > 0 else None

    def advance(self, dt: float) -> None:
        delta = self.target - self.pwm
        if delta == 0.0:
            return
        if self.slew_per_s is None:
            self.pwm = self.target
            return
        step = self.slew_per_s * dt
        if abs(delta) <= step:
            self.pwm = self.target
        else:
            self.pwm += step if delta > 0 else -step


class RoboClawEmulator:
    """Byte device: consumes request packets, answers, integrates channel state."""

    def __init__(self, config: EmulatorConfig | None = None):
        self.config = config or EmulatorConfig()
        self.channels = (
            ChannelSim(max_current_raw=round(self.config.max_current_a[0] * 100)),
            ChannelSim(max_current_raw=round(self.config.max_current_a[1] * 100)),
        )
        self.clock = 0.0
        self._buf = bytearray()

    # -- derived state ---------------------------------------------------------

    def current_amps(self, channel: int) -> float:
        ch = self.channels[channel]
        amps = abs(ch.pwm) / packets.DUTY_MAX * self.config.load_full_duty_amps
        return min(amps, ch.max_current_raw / 100.0)

    def actuator_height_cm(self, channel: int = 0) -> float | None:
        spec = self.config.actuator
        if spec is None:
            return None
        fraction = self.channels[channel].fraction
        return spec.min_height_cm + (spec.max_height_cm - spec.min_height_cm) * fraction

    # -- byte-device surface -----------------------------------------------------

    def feed(self, data: bytes) -> bytes:
        self._buf.extend(data)
        out = bytearray()
        while True:
            consumed, response = self._parse_one()
            if consumed == 0:
                break
            del self._buf[:consumed]
            out.extend(response)
        return bytes(out)

    def tick(self, dt: float) -> bytes:
        for ch in self.channels:
            ch.advance(dt)
            if self.config.actuator is not None:
                rate = (ch.pwm / packets.DUTY_MAX) / self.config.actuator.full_travel_s
                ch.fraction = min(1.0, max(0.0, ch.fraction + rate * dt))
        self.clock += dt
        return b""

    # -- request handling --------------------------------------------------------

    def _parse_one(self) -> tuple[int, bytes]:
        """(bytes consumed, response); (0, b'') when more data is needed."""
        buf = self._buf
        if len(buf) < 2:
            return 0, b""
        address, opcode = buf[0], buf[1]
        payload_len = packets.REQUEST_PAYLOAD_LEN.get(opcode)
        if address != self.config.address or payload_len is None:
            return 1, b""  # resync one byte at a time
        need = 2 + payload_len + 2
        if len(buf) < need:
            return 0, b""
        body = bytes(buf[:need - 2])
        (crc,) = struct.unpack(">H", buf[need - 2:need])
        if packets.crc16_ccitt(body) != crc:
            return 1, b""  # corrupted packet: drop a byte, let CRC resync
        return need, self._execute(opcode, body[2:])

    def _execute(self, opcode: int, payload: bytes) -> bytes:
        cfg = self.config
        if opcode in packets.WRITE_OPCODES:
            self._apply_write(opcode, payload)
            return bytes((packets.ACK,))
        if opcode == Opcode.GET_FIRMWARE_VERSION:
            body = cfg.firmware_version.encode("ascii") + b"\n\x00"
            return packets.build_read_response(cfg.address, opcode, body)
        if opcode == Opcode.GET_MAIN_BATTERY:
            raw = round(cfg.main_battery_v * 10)
            return packets.build_read_response(cfg.address, opcode, struct.pack(">H", raw))
        if opcode == Opcode.GET_TEMPERATURE:
            raw = round(cfg.temperature_c * 10)
            return packets.build_read_response(cfg.address, opcode, struct.pack(">H", raw))
        if opcode == Opcode.GET_PWMS:
            raw = struct.pack(">hh", round(self.channels[0].pwm), round(self.channels[1].pwm))
            return packets.build_read_response(cfg.address, opcode, raw)
        if opcode == Opcode.GET_CURRENTS:
            raw = struct.pack(
                ">HH",
                round(self.current_amps(0) * 100),
                round(self.current_amps(1) * 100),
            )
            return packets.build_read_response(cfg.address, opcode, raw)
        raise AssertionError(f"unhandled opcode {opcode}")  # table guards this

    def _apply_write(self, opcode: int, payload: bytes) -> None:
        if opcode in (Opcode.M1_FORWARD, Opcode.M1_BACKWARD,
                      Opcode.M2_FORWARD, Opcode.M2_BACKWARD):
            speed = min(payload[0], packets.SPEED_MAX)
            pwm = speed / packets.SPEED_MAX * packets.DUTY_MAX
            channel = self.channels[0 if opcode in (Opcode.M1_FORWARD, Opcode.M1_BACKWARD) else 1]
            channel.set_instant(pwm if opcode in (Opcode.M1_FORWARD, Opcode.M2_FORWARD) else -pwm)
        elif opcode in (Opcode.M1_DUTY_ACCEL, Opcode.M2_DUTY_ACCEL):
            duty, accel = packets.unpack_duty_accel(payload)
            self.channels[0 if opcode == Opcode.M1_DUTY_ACCEL else 1].set_ramped(duty, accel)
        elif opcode in (Opcode.SET_M1_MAX_CURRENT, Opcode.SET_M2_MAX_CURRENT):
            (raw,) = struct.unpack(">I", payload)
            self.channels[0 if opcode == Opcode.SET_M1_MAX_CURRENT else 1].max_current_raw = raw
        else:  # pragma: no cover - WRITE_OPCODES is closed
            raise AssertionError(f"unhandled write opcode {opcode}")
