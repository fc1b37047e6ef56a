"""The virtual Scufy board.

One logical owner mutates the board through ``submit``/``tick``. ``submit``
only queues raw frames; every effect (acks, errors, motion, completions)
happens inside ``tick``, which keeps output ordering deterministic:

  1. queued frames are dispatched in arrival order (immediate acks),
  2. moving motors integrate ``dt`` seconds and guard limits are enforced,
  3. completion frames for motions that finished this tick, in motor order.

Rejected frames (bad syntax, missing controller, bad index) become a bare
``E#`` on the wire, matching the firmware contract.
"""

from __future__ import annotations

from collections import deque

from jenny5.firmware import config as board_config
from jenny5.firmware.motion import (
    AS5147Sim,
    JointBinding,
    MotorState,
    ServoSim,
    StepperMotorSim,
)
from jenny5.scufy import wire


class VirtualBoard:
    """Firmware stand-in: consumes command frames, emits response frames."""

    def __init__(self, config: board_config.BoardConfig | None = None):
        self.config = config or board_config.BoardConfig()
        self.firmware_version = self.config.firmware_version
        self.clock = 0.0
        self.tick_count = 0
        self.steppers: list[StepperMotorSim] | None = None
        self.servos: list[ServoSim] | None = None
        self.as5147s: list[AS5147Sim] | None = None
        self.bindings: list[JointBinding] = list(self.config.bindings)
        self._binding_by_sensor = {b.sensor_index: b for b in self.bindings}
        self._inbound: deque[bytes] = deque()
        self._pending: dict[int, str] = {}  # motor index -> "move" | "home"

    # -- wiring helpers ------------------------------------------------------

    def binding_for_sensor(self, sensor_index: int) -> JointBinding | None:
        return self._binding_by_sensor.get(sensor_index)

    def sensor_reading(self, sensor_index: int) -> float:
        """Live reading: pure function of the bound motor position, else default."""
        binding = self._binding_by_sensor.get(sensor_index)
        if binding is not None and self.steppers is not None \
                and 0 <= binding.motor_index < len(self.steppers):
            return binding.reading(self.steppers[binding.motor_index].position)
        return self.config.sensor_defaults.get(sensor_index, 0.0)

    def _guarded_specs(self, motor_index: int, motor: StepperMotorSim):
        """Attached range sensors with a live binding to this motor.

        Potentiometer specs are accepted on the wire but have no live model
        in the sim, so only AS5147 specs contribute here.
        """
        for spec in motor.attached:
            if spec.kind is not wire.SensorKind.AS5147:
                continue
            binding = self._binding_by_sensor.get(spec.sensor_index)
            if binding is not None and binding.motor_index == motor_index:
                yield spec, binding

    def _first_guarded_spec(self, motor_index: int) -> tuple[wire.SensorAttachSpec, JointBinding] | None:
        motor = self.steppers[motor_index]
        return next(self._guarded_specs(motor_index, motor), None)

    # -- the submit/tick surface ---------------------------------------------

    def submit(self, frame: bytes | str) -> None:
        """Queue one raw frame; it is acted on at the next tick."""
        if isinstance(frame, str):
            frame = frame.encode("ascii", errors="replace")
        self._inbound.append(frame)

    def tick(self, dt: float) -> list[bytes]:
        """Advance simulated time by dt seconds; returns frames emitted."""
        if not 0 < dt <= 0.1:
            raise ValueError(f"dt must be in (0, 0.1] seconds, got {dt}")
        out: list[bytes] = []
        while self._inbound:
            self._dispatch(self._inbound.popleft(), out)
        if self.steppers is not None:
            for index, motor in enumerate(self.steppers):
                if motor.state is not MotorState.MOVING:
                    continue
                done = motor.advance(dt)
                if self._enforce_guards(index, motor):
                    done = True
                if done:
                    self._emit_completion(index, motor, out)
        self.clock += dt
        self.tick_count += 1
        return out

    def drain(self, dt: float, max_ticks: int = 200000) -> list[bytes]:
        """Tick until no motion remains and no input is queued (test helper)."""
        out: list[bytes] = []
        for _ in range(max_ticks):
            out.extend(self.tick(dt))
            if not self._inbound and not self._pending:
                return out
        raise RuntimeError("board did not settle within max_ticks")

    # -- internals -------------------------------------------------------------

    def _emit(self, out: list[bytes], response: wire.Response) -> None:
        out.append(wire.encode_response(response))

    def _error(self, out: list[bytes]) -> None:
        self._emit(out, wire.Error())

    def _emit_completion(self, index: int, motor: StepperMotorSim, out: list[bytes]) -> None:
        kind = self._pending.pop(index, "move")
        if kind == "home":
            self._emit(out, wire.StepperHomed(index))
        else:
            self._emit(out, wire.StepperMoveDone(index, motor.distance_to_go))

    def _enforce_guards(self, index: int, motor: StepperMotorSim) -> bool:
        """Clamp the motor at a guard bound; True if the move was cut short."""
        for spec, binding in self._guarded_specs(index, motor):
            reading = binding.reading(motor.position)
            lo = min(spec.end1, spec.end2)
            hi = max(spec.end1, spec.end2)
            bound = None
            if reading < lo:
                bound = lo
            elif reading > hi:
                bound = hi
            if bound is not None:
                motor.position = binding.steps_for_reading(bound)
                motor.velocity = 0.0
                motor.state = MotorState.LOCKED
                return True
        return False

    def _stepper(self, index: int) -> StepperMotorSim | None:
        if self.steppers is None or not 0 <= index < len(self.steppers):
            return None
        return self.steppers[index]

    def _start_motion(self, index: int, motor: StepperMotorSim, target: int, kind: str,
                      out: list[bytes]) -> None:
        # a new command supersedes an in-flight move: the old one emits nothing
        self._pending.pop(index, None)
        if motor.start_move(target):
            if kind == "home":
                self._emit(out, wire.StepperHomed(index))
            else:
                self._emit(out, wire.StepperMoveDone(index, 0))
        else:
            self._pending[index] = kind

    def _dispatch(self, frame: bytes, out: list[bytes]) -> None:
        try:
            cmd = wire.decode_command(frame)
        except wire.ScufyDecodeError:
            self._error(out)
            return

        if isinstance(cmd, wire.TestConnection):
            self._emit(out, wire.Alive())
        elif isinstance(cmd, wire.GetVersion):
            self._emit(out, wire.Version(self.firmware_version))
        elif isinstance(cmd, wire.CreateSteppers):
            # re-creation replaces the previous controller outright
            self.steppers = [
                StepperMotorSim(d, s, e,
                                max_speed=self.config.default_speed,
                                acceleration=self.config.default_acceleration)
                for d, s, e in cmd.pin_triples
            ]
            self._pending.clear()
            self._emit(out, wire.SteppersCreated())
        elif isinstance(cmd, wire.CreateServos):
            self.servos = [ServoSim(pin, position=self.config.servo_home,
                                    home=self.config.servo_home) for pin in cmd.pins]
            self._emit(out, wire.ServosCreated())
        elif isinstance(cmd, wire.CreateAS5147s):
            self.as5147s = [
                AS5147Sim(pin, self.config.sensor_defaults.get(i, 0.0))
                for i, pin in enumerate(cmd.pins)
            ]
            self._emit(out, wire.AS5147sCreated())
        elif isinstance(cmd, wire.AttachSensors):
            motor = self._stepper(cmd.motor_index)
            if motor is None:
                self._error(out)
                return
            motor.attached = cmd.sensors
            self._emit(out, wire.SensorsAttached(cmd.motor_index))
        elif isinstance(cmd, wire.RemoveAttachedSensors):
            motor = self._stepper(cmd.motor_index)
            if motor is None:
                self._error(out)
                return
            motor.attached = ()
            self._emit(out, wire.SensorsRemoved(cmd.motor_index))
        elif isinstance(cmd, wire.MoveStepper):
            motor = self._stepper(cmd.motor_index)
            if motor is None:
                self._error(out)
                return
            target = round(motor.position) + cmd.steps
            self._start_motion(cmd.motor_index, motor, target, "move", out)
        elif isinstance(cmd, wire.GotoSensorPosition):
            motor = self._stepper(cmd.motor_index)
            if motor is None:
                self._error(out)
                return
            guarded = self._first_guarded_spec(cmd.motor_index)
            if guarded is None:
                self._error(out)  # no position sensor to resolve the request
                return
            _, binding = guarded
            target = round(binding.steps_for_reading(cmd.sensor_position))
            self._start_motion(cmd.motor_index, motor, target, "move", out)
        elif isinstance(cmd, wire.GoHomeStepper):
            motor = self._stepper(cmd.motor_index)
            if motor is None:
                self._error(out)
                return
            guarded = self._first_guarded_spec(cmd.motor_index)
            if guarded is None:
                self._emit(out, wire.StepperHomed(cmd.motor_index))  # nothing to do
                return
            spec, binding = guarded
            target = round(binding.steps_for_reading(spec.home))
            self._start_motion(cmd.motor_index, motor, target, "home", out)
        elif isinstance(cmd, wire.StopStepper):
            motor = self._stepper(cmd.motor_index)
            if motor is None:
                self._error(out)
                return
            self._pending.pop(cmd.motor_index, None)  # stop supersedes the move
            motor.halt(MotorState.LOCKED)
            self._emit(out, wire.StepperStopped(cmd.motor_index))
        elif isinstance(cmd, wire.LockStepper):
            motor = self._stepper(cmd.motor_index)
            if motor is None:
                self._error(out)
                return
            self._pending.pop(cmd.motor_index, None)
            motor.halt(MotorState.LOCKED)
            self._emit(out, wire.StepperLocked(cmd.motor_index))
        elif isinstance(cmd, wire.DisableStepper):
            motor = self._stepper(cmd.motor_index)
            if motor is None:
                self._error(out)
                return
            self._pending.pop(cmd.motor_index, None)
            motor.halt(MotorState.DISABLED)
            self._emit(out, wire.StepperDisabled(cmd.motor_index))
        elif isinstance(cmd, wire.SetSpeedAccel):
            motor = self._stepper(cmd.motor_index)
            if motor is None:
                self._error(out)
                return
            motor.max_speed = float(cmd.speed)
            motor.acceleration = float(cmd.acceleration)
            self._emit(out, wire.SpeedAccelSet(cmd.motor_index))
        elif isinstance(cmd, wire.MoveServo):
            servo = self._servo(cmd.servo_index)
            if servo is None:
                self._error(out)
                return
            d = servo.move_to(cmd.position)
            self._emit(out, wire.ServoMoveDone(cmd.servo_index, d))
        elif isinstance(cmd, wire.HomeServo):
            servo = self._servo(cmd.servo_index)
            if servo is None:
                self._error(out)
                return
            servo.position = servo.home
            self._emit(out, wire.ServoHomed(cmd.servo_index))
        elif isinstance(cmd, wire.ReadAS5147):
            if self.as5147s is None or not 0 <= cmd.sensor_index < len(self.as5147s):
                self._error(out)
                return
            self._emit(out, wire.AS5147Reading(cmd.sensor_index,
                                               round(self.sensor_reading(cmd.sensor_index))))
        elif isinstance(cmd, wire.ReadUltrasonic):
            # board-level sensor; no controller documented, scenario-configured
            cm = self.config.ultrasonic_cm.get(cmd.sensor_index,
                                               self.config.ultrasonic_default_cm)
            self._emit(out, wire.UltrasonicReading(cmd.sensor_index, cm))
        else:  # pragma: no cover - the command union is closed
            self._error(out)

    def _servo(self, index: int) -> ServoSim | None:
        if self.servos is None or not 0 <= index < len(self.servos):
            return None
        return self.servos[index]
