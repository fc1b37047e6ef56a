"""The Scufy host client.

Mirrors the PC control library surface: ``send_*`` writes command frames,
``update_commands_from_serial`` drains the transport into the event queue,
``query_for_event`` / ``wait_for_event`` consume it. A client instance is
single-owner; each send writes its frames in one contiguous transport write,
which is the atomicity contract the teleop server relies on.
"""

from __future__ import annotations

import time
from enum import IntEnum
from typing import Iterable, Sequence

from jenny5.host.events import DeviceEvent, EventQueue, EventType, event_from_response
from jenny5.host.transport import TransportClosedError, open_transport
from jenny5.scufy import BufferOverflowError, FrameDecoder, wire

#: events that complete a motor-targeted command and flip its state to DONE
_MOTOR_COMPLETION_EVENTS = {
    EventType.STEPPER_MOVE_DONE,
    EventType.STEPPER_HOMED,
    EventType.STEPPER_STOPPED,
    EventType.STEPPER_LOCKED,
    EventType.STEPPER_DISABLED,
    EventType.SPEED_ACCEL_SET,
}

DEFAULT_WAIT_S = 3.0  # documented give-up deadline for command acknowledgements
IDLE_POLL_S = 0.005  # pause when the transport had nothing for us


class MotorState(IntEnum):
    IDLE = 0
    COMMAND_SENT = 1
    DONE = 2


class UnsupportedFeatureError(NotImplementedError):
    pass


class ScufyClient:
    def __init__(self, transport):
        self._transport = transport
        self._decoder = FrameDecoder()
        self.events = EventQueue()
        self._motor_states: dict[int, MotorState] = {}
        self.last_version: str | None = None
        self.decode_errors = 0  # malformed inbound frames dropped, not evented

    @classmethod
    def connect(cls, endpoint: str, baud: int = 115200,
                connect_timeout: float = 3.0) -> "ScufyClient":
        """Open 'host:port' (TCP) or a serial device path."""
        return cls(open_transport(endpoint, baud, connect_timeout))

    def is_open(self) -> bool:
        return bool(getattr(self._transport, "is_open", False))

    def close(self) -> None:
        self._transport.close()

    # -- sending --------------------------------------------------------------

    def _write_frames(self, commands: Iterable[wire.Command]) -> None:
        payload = b"".join(wire.encode_command(c) for c in commands)
        if not payload:
            return
        try:
            self._transport.write(payload)
        except ConnectionError as exc:
            raise TransportClosedError(str(exc)) from exc

    def _send_motor_command(self, command: wire.Command, motor_index: int) -> None:
        self._write_frames([command])
        self._motor_states[motor_index] = MotorState.COMMAND_SENT

    def send_is_alive(self) -> None:
        self._write_frames([wire.TestConnection()])

    def send_get_version(self) -> None:
        self._write_frames([wire.GetVersion()])

    def send_create_stepper_motors(self, dir_pins: Sequence[int], step_pins: Sequence[int],
                                   enable_pins: Sequence[int]) -> None:
        if not (len(dir_pins) == len(step_pins) == len(enable_pins)) or not dir_pins:
            raise ValueError("pin arrays must be equal-length and non-empty")
        triples = tuple(zip(dir_pins, step_pins, enable_pins))
        self._write_frames([wire.CreateSteppers(triples)])

    def send_create_servos(self, pins: Sequence[int]) -> None:
        self._write_frames([wire.CreateServos(tuple(pins))])

    def send_create_as5147s(self, pins: Sequence[int]) -> None:
        self._write_frames([wire.CreateAS5147s(tuple(pins))])

    def send_create_tera_ranger_one(self) -> None:
        # named in the upstream library, but no wire command is documented
        raise UnsupportedFeatureError("Tera Ranger One has no documented wire command")

    def send_move_stepper_motor(self, motor_index: int, steps: int) -> None:
        self._send_motor_command(wire.MoveStepper(motor_index, steps), motor_index)

    def send_move_stepper_motor2(self, m1: int, steps1: int, m2: int, steps2: int) -> None:
        self.send_move_stepper_motor_array([m1, m2], [steps1, steps2])

    def send_move_stepper_motor3(self, m1, s1, m2, s2, m3, s3) -> None:
        self.send_move_stepper_motor_array([m1, m2, m3], [s1, s2, s3])

    def send_move_stepper_motor4(self, m1, s1, m2, s2, m3, s3, m4, s4) -> None:
        self.send_move_stepper_motor_array([m1, m2, m3, m4], [s1, s2, s3, s4])

    def send_move_stepper_motor_array(self, motor_indexes: Sequence[int],
                                      steps: Sequence[int]) -> None:
        """One SM frame per motor, in argument order, written contiguously."""
        if len(motor_indexes) != len(steps):
            raise ValueError("motor_indexes and steps must have equal length")
        commands = [wire.MoveStepper(m, s) for m, s in zip(motor_indexes, steps)]
        self._write_frames(commands)
        for m in motor_indexes:
            self._motor_states[m] = MotorState.COMMAND_SENT

    def send_go_home_stepper_motor(self, motor_index: int) -> None:
        self._send_motor_command(wire.GoHomeStepper(motor_index), motor_index)

    def send_stop_stepper_motor(self, motor_index: int) -> None:
        self._send_motor_command(wire.StopStepper(motor_index), motor_index)

    def send_lock_stepper_motor(self, motor_index: int) -> None:
        self._send_motor_command(wire.LockStepper(motor_index), motor_index)

    def send_disable_stepper_motor(self, motor_index: int) -> None:
        self._send_motor_command(wire.DisableStepper(motor_index), motor_index)

    def send_stepper_motor_goto_sensor_position(self, motor_index: int,
                                                sensor_position: int) -> None:
        self._send_motor_command(
            wire.GotoSensorPosition(motor_index, sensor_position), motor_index)

    def send_set_stepper_motor_speed_and_acceleration(self, motor_index: int, speed: int,
                                                      acceleration: int) -> None:
        self._send_motor_command(
            wire.SetSpeedAccel(motor_index, speed, acceleration), motor_index)

    def send_attach_sensors_to_stepper_motor(
        self,
        motor_index: int,
        potentiometers: Sequence[tuple[int, int, int, int, int]] = (),
        as5147s: Sequence[tuple[int, int, int, int, int]] = (),
        infrared: Sequence[int] = (),
        buttons: Sequence[tuple[int, int]] = (),
    ) -> None:
        """Attach sensors; pot/AS tuples are (index, low, high, home, direction).

        Infrared entries are plain indices (direction defaults to +1 on the
        wire); buttons are (index, direction).
        """
        specs: list[wire.SensorAttachSpec] = []
        for idx, low, high, home, direction in potentiometers:
            specs.append(wire.SensorAttachSpec(
                wire.SensorKind.POTENTIOMETER, idx, low, high, home, direction))
        for idx, low, high, home, direction in as5147s:
            specs.append(wire.SensorAttachSpec(
                wire.SensorKind.AS5147, idx, low, high, home, direction))
        for idx in infrared:
            specs.append(wire.SensorAttachSpec(wire.SensorKind.INFRARED, idx))
        for idx, direction in buttons:
            specs.append(wire.SensorAttachSpec(
                wire.SensorKind.BUTTON, idx, direction=direction))
        self._write_frames([wire.AttachSensors(motor_index, tuple(specs))])

    def send_remove_attached_sensors_from_stepper_motor(self, motor_index: int) -> None:
        self._write_frames([wire.RemoveAttachedSensors(motor_index)])

    def send_get_as5147_position(self, sensor_index: int) -> None:
        self._write_frames([wire.ReadAS5147(sensor_index)])

    def send_read_ultrasonic(self, sensor_index: int) -> None:
        self._write_frames([wire.ReadUltrasonic(sensor_index)])

    # -- receiving --------------------------------------------------------------

    def update_commands_from_serial(self) -> bool:
        """Drain the transport into the event queue; True iff events were added.

        Call frequently from the main loop. Partial frames stay buffered until
        their remainder arrives; malformed frames are dropped and counted.
        """
        try:
            data = self._transport.read_available()
        except ConnectionError as exc:
            raise TransportClosedError(str(exc)) from exc
        if not data:
            return False
        try:
            frames = self._decoder.feed(data)
        except BufferOverflowError as exc:
            frames = exc.frames
            self.decode_errors += 1
        added = False
        for frame in frames:
            try:
                response = wire.decode_response(frame)
            except wire.ScufyDecodeError:
                self.decode_errors += 1
                continue
            event = event_from_response(response)
            self.events.append(event)
            added = True
            if event.event_type in _MOTOR_COMPLETION_EVENTS:
                self._motor_states[event.param1] = MotorState.DONE
            elif event.event_type is EventType.VERSION_RECEIVED:
                self.last_version = event.text
        return added

    def query_for_event(self, event_type: EventType,
                        param1: int | None = None) -> DeviceEvent | None:
        """Remove and return the first queued event of this type (and param1,
        when given); None on miss, queue untouched."""
        return self.events.query(event_type, param1)

    def wait_for_event(self, event_type: EventType, timeout_s: float = DEFAULT_WAIT_S,
                       param1: int | None = None) -> DeviceEvent | None:
        """Poll update/query until the event arrives or the deadline passes.

        The loop sleeps 5 ms whenever the transport had nothing new.
        """
        deadline = time.monotonic() + timeout_s
        while True:
            try:
                got_new = self.update_commands_from_serial()
            except TransportClosedError:
                return None
            event = self.query_for_event(event_type, param1)
            if event is not None:
                return event
            if time.monotonic() >= deadline:
                return None
            if not got_new:
                time.sleep(IDLE_POLL_S)

    # -- per-motor command state ------------------------------------------------

    def get_stepper_motor_state(self, motor_index: int) -> MotorState:
        return self._motor_states.get(motor_index, MotorState.IDLE)

    def set_stepper_motor_state(self, motor_index: int, state: MotorState) -> None:
        self._motor_states[motor_index] = MotorState(state)
