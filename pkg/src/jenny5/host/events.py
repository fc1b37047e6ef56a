"""Device events: the host-side translation of inbound response frames.

One frame becomes exactly one event. ``param1`` usually carries a motor or
sensor index, ``param2`` a distance or reading; text payloads (version, info)
ride in ``text``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum

from jenny5.scufy import wire


class EventType(IntEnum):
    IS_ALIVE = 1
    STEPPERS_CONTROLLER_CREATED = 2
    SERVOS_CONTROLLER_CREATED = 3
    AS5147_CONTROLLER_CREATED = 4
    SENSORS_ATTACHED = 5
    STEPPER_MOVE_DONE = 6
    STEPPER_HOMED = 7
    STEPPER_STOPPED = 8
    STEPPER_LOCKED = 9
    STEPPER_DISABLED = 10
    SPEED_ACCEL_SET = 11
    SERVO_MOVE_DONE = 12
    SERVO_HOMED = 13
    AS5147_READ = 14
    ULTRASONIC_READ = 15
    SENSORS_REMOVED = 16
    ERROR_RECEIVED = 17
    INFO_RECEIVED = 18
    VERSION_RECEIVED = 19


@dataclass(frozen=True)
class DeviceEvent:
    event_type: EventType
    param1: int = 0
    param2: int = 0
    text: str = ""


def event_from_response(resp: wire.Response) -> DeviceEvent:
    """Total mapping from the response union to events."""
    if isinstance(resp, wire.Alive):
        return DeviceEvent(EventType.IS_ALIVE)
    if isinstance(resp, wire.Version):
        return DeviceEvent(EventType.VERSION_RECEIVED, text=resp.text)
    if isinstance(resp, wire.SteppersCreated):
        return DeviceEvent(EventType.STEPPERS_CONTROLLER_CREATED)
    if isinstance(resp, wire.ServosCreated):
        return DeviceEvent(EventType.SERVOS_CONTROLLER_CREATED)
    if isinstance(resp, wire.AS5147sCreated):
        return DeviceEvent(EventType.AS5147_CONTROLLER_CREATED)
    if isinstance(resp, wire.SensorsAttached):
        return DeviceEvent(EventType.SENSORS_ATTACHED, resp.motor_index)
    if isinstance(resp, wire.StepperMoveDone):
        return DeviceEvent(EventType.STEPPER_MOVE_DONE, resp.motor_index, resp.distance_to_go)
    if isinstance(resp, wire.StepperHomed):
        return DeviceEvent(EventType.STEPPER_HOMED, resp.motor_index)
    if isinstance(resp, wire.StepperStopped):
        return DeviceEvent(EventType.STEPPER_STOPPED, resp.motor_index)
    if isinstance(resp, wire.StepperLocked):
        return DeviceEvent(EventType.STEPPER_LOCKED, resp.motor_index)
    if isinstance(resp, wire.StepperDisabled):
        return DeviceEvent(EventType.STEPPER_DISABLED, resp.motor_index)
    if isinstance(resp, wire.SpeedAccelSet):
        return DeviceEvent(EventType.SPEED_ACCEL_SET, resp.motor_index)
    if isinstance(resp, wire.ServoMoveDone):
        return DeviceEvent(EventType.SERVO_MOVE_DONE, resp.servo_index, resp.d)
    if isinstance(resp, wire.ServoHomed):
        return DeviceEvent(EventType.SERVO_HOMED, resp.servo_index)
    if isinstance(resp, wire.AS5147Reading):
        return DeviceEvent(EventType.AS5147_READ, resp.sensor_index, resp.angle)
    if isinstance(resp, wire.UltrasonicReading):
        return DeviceEvent(EventType.ULTRASONIC_READ, resp.sensor_index, resp.distance_cm)
    if isinstance(resp, wire.SensorsRemoved):
        return DeviceEvent(EventType.SENSORS_REMOVED, resp.motor_index)
    if isinstance(resp, wire.Error):
        return DeviceEvent(EventType.ERROR_RECEIVED)
    if isinstance(resp, wire.Info):
        return DeviceEvent(EventType.INFO_RECEIVED, text=resp.text)
    raise TypeError(f"unmapped response {resp!r}")


class EventQueue:
    """FIFO of device events with find-first-and-remove queries."""

    def __init__(self):
        self._events: list[DeviceEvent] = []

    def __len__(self) -> int:
        return len(self._events)

    def append(self, event: DeviceEvent) -> None:
        self._events.append(event)

    def snapshot(self) -> list[DeviceEvent]:
        return list(self._events)

    def query(self, event_type: EventType, param1: int | None = None) -> DeviceEvent | None:
        """Remove and return the first matching event; None (queue untouched) on miss.

        With ``param1`` given, only events whose param1 equals it match.
        """
        for i, event in enumerate(self._events):
            if event.event_type != event_type:
                continue
            if param1 is not None and event.param1 != param1:
                continue
            return self._events.pop(i)
        return None
