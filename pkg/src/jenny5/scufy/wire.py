"""Typed encoder/decoder for the Scufy serial wire grammar.

Every frame is ASCII, space separated and terminated by ``#``. Opcodes that
target a motor/sensor carry the index juxtaposed to the two-letter opcode
(``SM1 100#``); controller-creation opcodes take space-separated arguments
(``CS 3 5 4 12 ...#``).

Encoding is canonical (single spaces, no CR/LF); decoding tolerates repeated
interior whitespace and stray CR/LF. The full opcode table lives in
``docs/protocol.md``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

MAX_MOTOR_INDEX = 254
MAX_PIN = 255
INT32_MIN, INT32_MAX = -(2**31), 2**31 - 1
UINT32_MAX = 2**32 - 1

#: Wire commands that have no documented syntax upstream; they exist so the
#: host library surface is complete. Kept in one place so callers can tell
#: core grammar from extensions.
PROTOCOL_EXTENSIONS = ("RU", "AD")

_VERSION_RE = re.compile(r"^\d+\.\d+\.\d+\.\d+$")
_OPCODE_RE = re.compile(r"^([A-Z]+)(-?\d+)?$")


# ---------------------------------------------------------------------------
# error taxonomy


class ScufyDecodeError(ValueError):
    """Base for all frame-decoding failures.

    ``token_index`` is the 0-based index of the offending token within the
    frame body (-1 when the frame as a whole is at fault).
    """

    def __init__(self, message: str, token_index: int = -1):
        super().__init__(message)
        self.token_index = token_index


class EmptyFrameError(ScufyDecodeError):
    pass


class MissingTerminatorError(ScufyDecodeError):
    pass


class UnknownOpcodeError(ScufyDecodeError):
    pass


class ArityMismatchError(ScufyDecodeError):
    pass


class NonNumericFieldError(ScufyDecodeError):
    pass


class ValueOutOfRangeError(ScufyDecodeError):
    pass


# ---------------------------------------------------------------------------
# domain types


class SensorKind(Enum):
    """Sensor families attachable to a stepper, with their wire tag."""

    AS5147 = "A"
    POTENTIOMETER = "P"
    BUTTON = "B"
    INFRARED = "I"

    @property
    def has_range(self) -> bool:
        """Whether the kind carries end1/end2/home guard fields on the wire."""
        return self in (SensorKind.AS5147, SensorKind.POTENTIOMETER)


_KIND_BY_TAG = {k.value: k for k in SensorKind}


def _check_index(value: int, what: str = "index") -> None:
    if not isinstance(value, int) or isinstance(value, bool):
        raise TypeError(f"{what} must be an int, got {value!r}")
    if not 0 <= value <= MAX_MOTOR_INDEX:
        raise ValueError(f"{what} {value} outside 0..{MAX_MOTOR_INDEX}")


def _check_pin(value: int) -> None:
    if not 0 <= value <= MAX_PIN:
        raise ValueError(f"pin {value} outside 0..{MAX_PIN}")


@dataclass(frozen=True)
class SensorAttachSpec:
    """One sensor bound to a stepper by the attach command.

    For AS5147/potentiometer the pair (end1, end2) guards motor travel and
    ``home`` must lie inside it; buttons and infrared carry only the index
    and direction.
    """

    kind: SensorKind
    sensor_index: int
    end1: int | None = None
    end2: int | None = None
    home: int | None = None
    direction: int = 1

    def __post_init__(self):
        _check_index(self.sensor_index, "sensor_index")
        if self.direction not in (1, -1):
            raise ValueError(f"direction must be +1 or -1, got {self.direction}")
        if self.kind.has_range:
            if self.end1 is None or self.end2 is None or self.home is None:
                raise ValueError(f"{self.kind.name} attach needs end1/end2/home")
            lo, hi = min(self.end1, self.end2), max(self.end1, self.end2)
            if not lo <= self.home <= hi:
                raise ValueError(f"home {self.home} outside guard range [{lo}, {hi}]")
        else:
            if self.end1 is not None or self.end2 is not None or self.home is not None:
                raise ValueError(f"{self.kind.name} attach carries no end1/end2/home")

    def wire_tokens(self) -> list[str]:
        head = f"{self.kind.value}{self.sensor_index}"
        if self.kind.has_range:
            return [head, str(self.end1), str(self.end2), str(self.home), str(self.direction)]
        return [head, str(self.direction)]


class Command:
    """Marker base for the command union."""


@dataclass(frozen=True)
class TestConnection(Command):
    pass


@dataclass(frozen=True)
class GetVersion(Command):
    pass


@dataclass(frozen=True)
class CreateSteppers(Command):
    pin_triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "pin_triples", tuple(tuple(t) for t in self.pin_triples))
        if len(self.pin_triples) < 1:
            raise ValueError("CreateSteppers needs at least one pin triple")
        for triple in self.pin_triples:
            if len(triple) != 3:
                raise ValueError(f"pin triple must be (dir, step, enable), got {triple}")
            for pin in triple:
                _check_pin(pin)


@dataclass(frozen=True)
class CreateServos(Command):
    pins: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "pins", tuple(self.pins))
        if len(self.pins) < 1:
            raise ValueError("CreateServos needs at least one pin")
        for pin in self.pins:
            _check_pin(pin)


@dataclass(frozen=True)
class CreateAS5147s(Command):
    pins: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "pins", tuple(self.pins))
        if len(self.pins) < 1:
            raise ValueError("CreateAS5147s needs at least one pin")
        for pin in self.pins:
            _check_pin(pin)


@dataclass(frozen=True)
class AttachSensors(Command):
    motor_index: int
    sensors: tuple[SensorAttachSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "sensors", tuple(self.sensors))
        _check_index(self.motor_index, "motor_index")
        if len(self.sensors) < 1:
            raise ValueError("AttachSensors needs at least one sensor spec")


@dataclass(frozen=True)
class MoveStepper(Command):
    motor_index: int
    steps: int

    def __post_init__(self):
        _check_index(self.motor_index, "motor_index")
        if not INT32_MIN <= self.steps <= INT32_MAX:
            raise ValueError(f"steps {self.steps} outside signed 32-bit range")


@dataclass(frozen=True)
class GoHomeStepper(Command):
    motor_index: int

    def __post_init__(self):
        _check_index(self.motor_index, "motor_index")


@dataclass(frozen=True)
class DisableStepper(Command):
    motor_index: int

    def __post_init__(self):
        _check_index(self.motor_index, "motor_index")


@dataclass(frozen=True)
class LockStepper(Command):
    motor_index: int

    def __post_init__(self):
        _check_index(self.motor_index, "motor_index")


@dataclass(frozen=True)
class StopStepper(Command):
    motor_index: int

    def __post_init__(self):
        _check_index(self.motor_index, "motor_index")


@dataclass(frozen=True)
class SetSpeedAccel(Command):
    motor_index: int
    speed: int
    acceleration: int

    def __post_init__(self):
        _check_index(self.motor_index, "motor_index")
        if not 0 <= self.speed <= UINT32_MAX:
            raise ValueError(f"speed {self.speed} outside unsigned 32-bit range")
        if not 0 <= self.acceleration <= UINT32_MAX:
            raise ValueError(f"acceleration {self.acceleration} outside unsigned 32-bit range")


@dataclass(frozen=True)
class GotoSensorPosition(Command):
    motor_index: int
    sensor_position: int

    def __post_init__(self):
        _check_index(self.motor_index, "motor_index")
        if not INT32_MIN <= self.sensor_position <= INT32_MAX:
            raise ValueError(f"sensor_position {self.sensor_position} out of range")


@dataclass(frozen=True)
class MoveServo(Command):
    servo_index: int
    position: int

    def __post_init__(self):
        _check_index(self.servo_index, "servo_index")
        if not INT32_MIN <= self.position <= INT32_MAX:
            raise ValueError(f"position {self.position} out of range")


@dataclass(frozen=True)
class HomeServo(Command):
    servo_index: int

    def __post_init__(self):
        _check_index(self.servo_index, "servo_index")


@dataclass(frozen=True)
class ReadAS5147(Command):
    sensor_index: int

    def __post_init__(self):
        _check_index(self.sensor_index, "sensor_index")


@dataclass(frozen=True)
class ReadUltrasonic(Command):
    # protocol extension, see PROTOCOL_EXTENSIONS
    sensor_index: int

    def __post_init__(self):
        _check_index(self.sensor_index, "sensor_index")


@dataclass(frozen=True)
class RemoveAttachedSensors(Command):
    # protocol extension, see PROTOCOL_EXTENSIONS
    motor_index: int

    def __post_init__(self):
        _check_index(self.motor_index, "motor_index")


class Response:
    """Marker base for the response union."""


@dataclass(frozen=True)
class Alive(Response):
    pass


@dataclass(frozen=True)
class Version(Response):
    text: str  # year.month.day.build

    def __post_init__(self):
        if not _VERSION_RE.match(self.text):
            raise ValueError(f"version must be year.month.day.build, got {self.text!r}")


@dataclass(frozen=True)
class SteppersCreated(Response):
    pass


@dataclass(frozen=True)
class ServosCreated(Response):
    pass


@dataclass(frozen=True)
class AS5147sCreated(Response):
    pass


@dataclass(frozen=True)
class SensorsAttached(Response):
    motor_index: int

    def __post_init__(self):
        _check_index(self.motor_index, "motor_index")


@dataclass(frozen=True)
class StepperMoveDone(Response):
    motor_index: int
    distance_to_go: int  # 0 iff the commanded move completed fully

    def __post_init__(self):
        _check_index(self.motor_index, "motor_index")
        if not 0 <= self.distance_to_go <= INT32_MAX:
            raise ValueError(f"distance_to_go {self.distance_to_go} must be >= 0")


@dataclass(frozen=True)
class StepperHomed(Response):
    motor_index: int

    def __post_init__(self):
        _check_index(self.motor_index, "motor_index")


@dataclass(frozen=True)
class StepperDisabled(Response):
    motor_index: int

    def __post_init__(self):
        _check_index(self.motor_index, "motor_index")


@dataclass(frozen=True)
class StepperLocked(Response):
    motor_index: int

    def __post_init__(self):
        _check_index(self.motor_index, "motor_index")


@dataclass(frozen=True)
class SpeedAccelSet(Response):
    motor_index: int

    def __post_init__(self):
        _check_index(self.motor_index, "motor_index")


@dataclass(frozen=True)
class StepperStopped(Response):
    motor_index: int

    def __post_init__(self):
        _check_index(self.motor_index, "motor_index")


@dataclass(frozen=True)
class ServoMoveDone(Response):
    servo_index: int
    d: int  # 0 = completed, 1 = clamped/unreachable request

    def __post_init__(self):
        _check_index(self.servo_index, "servo_index")
        if self.d not in (0, 1):
            raise ValueError(f"servo move done flag must be 0 or 1, got {self.d}")


@dataclass(frozen=True)
class ServoHomed(Response):
    servo_index: int

    def __post_init__(self):
        _check_index(self.servo_index, "servo_index")


@dataclass(frozen=True)
class AS5147Reading(Response):
    sensor_index: int
    angle: int

    def __post_init__(self):
        _check_index(self.sensor_index, "sensor_index")
        if not INT32_MIN <= self.angle <= INT32_MAX:
            raise ValueError(f"angle {self.angle} out of range")


@dataclass(frozen=True)
class UltrasonicReading(Response):
    # protocol extension, see PROTOCOL_EXTENSIONS
    sensor_index: int
    distance_cm: int

    def __post_init__(self):
        _check_index(self.sensor_index, "sensor_index")
        if not 0 <= self.distance_cm <= INT32_MAX:
            raise ValueError(f"distance_cm {self.distance_cm} must be >= 0")


@dataclass(frozen=True)
class SensorsRemoved(Response):
    # protocol extension, see PROTOCOL_EXTENSIONS
    motor_index: int

    def __post_init__(self):
        _check_index(self.motor_index, "motor_index")


@dataclass(frozen=True)
class Error(Response):
    # carries no diagnostic payload on the wire
    pass


@dataclass(frozen=True)
class Info(Response):
    text: str = field(default="")

    def __post_init__(self):
        if "#" in self.text:
            raise ValueError("info text may not contain the frame terminator")


# ---------------------------------------------------------------------------
# encoding


def _frame(*tokens: str) -> bytes:
    return (" ".join(tokens) + "#").encode("ascii")


def encode_command(cmd: Command) -> bytes:
    """Render a command as canonical wire bytes (single spaces, trailing #)."""
    if isinstance(cmd, TestConnection):
        return b"T#"
    if isinstance(cmd, GetVersion):
        return b"V#"
    if isinstance(cmd, CreateSteppers):
        flat = [str(p) for triple in cmd.pin_triples for p in triple]
        return _frame("CS", str(len(cmd.pin_triples)), *flat)
    if isinstance(cmd, CreateServos):
        return _frame("CV", str(len(cmd.pins)), *[str(p) for p in cmd.pins])
    if isinstance(cmd, CreateAS5147s):
        return _frame("CA", str(len(cmd.pins)), *[str(p) for p in cmd.pins])
    if isinstance(cmd, AttachSensors):
        tokens = [f"AS{cmd.motor_index}", str(len(cmd.sensors))]
        for spec in cmd.sensors:
            tokens.extend(spec.wire_tokens())
        return _frame(*tokens)
    if isinstance(cmd, MoveStepper):
        return _frame(f"SM{cmd.motor_index}", str(cmd.steps))
    if isinstance(cmd, GoHomeStepper):
        return _frame(f"SH{cmd.motor_index}")
    if isinstance(cmd, DisableStepper):
        return _frame(f"SD{cmd.motor_index}")
    if isinstance(cmd, LockStepper):
        return _frame(f"SL{cmd.motor_index}")
    if isinstance(cmd, StopStepper):
        return _frame(f"ST{cmd.motor_index}")
    if isinstance(cmd, SetSpeedAccel):
        return _frame(f"SS{cmd.motor_index}", str(cmd.speed), str(cmd.acceleration))
    if isinstance(cmd, GotoSensorPosition):
        return _frame(f"SG{cmd.motor_index}", str(cmd.sensor_position))
    if isinstance(cmd, MoveServo):
        return _frame(f"VM{cmd.servo_index}", str(cmd.position))
    if isinstance(cmd, HomeServo):
        return _frame(f"VH{cmd.servo_index}")
    if isinstance(cmd, ReadAS5147):
        return _frame(f"RA{cmd.sensor_index}")
    if isinstance(cmd, ReadUltrasonic):
        return _frame(f"RU{cmd.sensor_index}")
    if isinstance(cmd, RemoveAttachedSensors):
        return _frame(f"AD{cmd.motor_index}")
    raise TypeError(f"not a Command: {cmd!r}")


def encode_response(r: Response) -> bytes:
    """Render a response as canonical wire bytes."""
    if isinstance(r, Alive):
        return b"T#"
    if isinstance(r, Version):
        return f"V{r.text}#".encode("ascii")
    if isinstance(r, SteppersCreated):
        return b"CS#"
    if isinstance(r, ServosCreated):
        return b"CV#"
    if isinstance(r, AS5147sCreated):
        return b"CA#"
    if isinstance(r, SensorsAttached):
        return _frame(f"AS{r.motor_index}")
    if isinstance(r, StepperMoveDone):
        return _frame(f"SM{r.motor_index}", str(r.distance_to_go))
    if isinstance(r, StepperHomed):
        return _frame(f"SH{r.motor_index}")
    if isinstance(r, StepperDisabled):
        return _frame(f"SD{r.motor_index}")
    if isinstance(r, StepperLocked):
        return _frame(f"SL{r.motor_index}")
    if isinstance(r, SpeedAccelSet):
        return _frame(f"SS{r.motor_index}")
    if isinstance(r, StepperStopped):
        return _frame(f"ST{r.motor_index}")
    if isinstance(r, ServoMoveDone):
        return _frame(f"VM{r.servo_index}", str(r.d))
    if isinstance(r, ServoHomed):
        return _frame(f"VH{r.servo_index}")
    if isinstance(r, AS5147Reading):
        return _frame(f"RA{r.sensor_index}", str(r.angle))
    if isinstance(r, UltrasonicReading):
        return _frame(f"RU{r.sensor_index}", str(r.distance_cm))
    if isinstance(r, SensorsRemoved):
        return _frame(f"AD{r.motor_index}")
    if isinstance(r, Error):
        return b"E#"
    if isinstance(r, Info):
        return f"I {r.text}#".encode("ascii", errors="replace")
    raise TypeError(f"not a Response: {r!r}")


# ---------------------------------------------------------------------------
# decoding


def _strip_frame(frame: bytes) -> str:
    if isinstance(frame, str):
        frame = frame.encode("ascii", errors="replace")
    if not frame.endswith(b"#"):
        raise MissingTerminatorError("frame does not end with '#'")
    body = frame[:-1].decode("latin-1").strip()
    if not body:
        raise EmptyFrameError("frame has no body")
    return body


def _int(tokens: list[str], i: int) -> int:
    if i >= len(tokens):
        raise ArityMismatchError(f"missing field at token {i}", token_index=i)
    tok = tokens[i]
    try:
        return int(tok, 10)
    except ValueError:
        raise NonNumericFieldError(f"token {i} is not an integer: {tok!r}", token_index=i) from None


def _split_opcode(token: str) -> tuple[str, int | None]:
    m = _OPCODE_RE.match(token)
    if not m:
        raise UnknownOpcodeError(f"malformed opcode token {token!r}", token_index=0)
    op, idx = m.group(1), m.group(2)
    return op, (int(idx) if idx is not None else None)


def _need_index(op: str, idx: int | None) -> int:
    if idx is None:
        raise ArityMismatchError(f"{op} requires a juxtaposed index", token_index=0)
    if not 0 <= idx <= MAX_MOTOR_INDEX:
        raise ValueOutOfRangeError(f"{op} index {idx} outside 0..{MAX_MOTOR_INDEX}", token_index=0)
    return idx


def _no_index(op: str, idx: int | None) -> None:
    if idx is not None:
        raise ArityMismatchError(f"{op} takes no juxtaposed index", token_index=0)


def _exact_arity(tokens: list[str], n: int) -> None:
    if len(tokens) > n:
        raise ArityMismatchError(f"unexpected extra token {tokens[n]!r}", token_index=n)


def _build(ctor, *args, token_index: int = -1):
    try:
        return ctor(*args)
    except (ValueError, TypeError) as exc:
        raise ValueOutOfRangeError(str(exc), token_index=token_index) from None


def decode_command(frame: bytes) -> Command:
    """Parse one `#`-terminated frame into a Command.

    Raises a :class:`ScufyDecodeError` subclass on malformed input; never
    anything else.
    """
    body = _strip_frame(frame)
    tokens = body.split()
    if not tokens:
        raise EmptyFrameError("frame has no tokens")
    op, idx = _split_opcode(tokens[0])

    if op == "T":
        _no_index(op, idx)
        _exact_arity(tokens, 1)
        return TestConnection()
    if op == "V":
        _no_index(op, idx)
        _exact_arity(tokens, 1)
        return GetVersion()
    if op == "CS":
        _no_index(op, idx)
        n = _int(tokens, 1)
        if n < 1:
            raise ValueOutOfRangeError(f"CS motor count must be >= 1, got {n}", token_index=1)
        _exact_arity(tokens, 2 + 3 * n)
        triples = []
        for k in range(n):
            base = 2 + 3 * k
            triples.append((_int(tokens, base), _int(tokens, base + 1), _int(tokens, base + 2)))
        return _build(CreateSteppers, tuple(triples), token_index=2)
    if op in ("CV", "CA"):
        _no_index(op, idx)
        n = _int(tokens, 1)
        if n < 1:
            raise ValueOutOfRangeError(f"{op} count must be >= 1, got {n}", token_index=1)
        _exact_arity(tokens, 2 + n)
        pins = tuple(_int(tokens, 2 + k) for k in range(n))
        ctor = CreateServos if op == "CV" else CreateAS5147s
        return _build(ctor, pins, token_index=2)
    if op == "AS":
        motor = _need_index(op, idx)
        n = _int(tokens, 1)
        if n < 1:
            raise ValueOutOfRangeError(f"AS sensor count must be >= 1, got {n}", token_index=1)
        specs = []
        pos = 2
        for _ in range(n):
            if pos >= len(tokens):
                raise ArityMismatchError(f"missing sensor spec at token {pos}", token_index=pos)
            tag_op, tag_idx = _split_opcode(tokens[pos])
            kind = _KIND_BY_TAG.get(tag_op)
            if kind is None:
                raise UnknownOpcodeError(f"unknown sensor tag {tokens[pos]!r}", token_index=pos)
            if tag_idx is None:
                raise ArityMismatchError(f"sensor tag {tag_op} requires an index", token_index=pos)
            if kind.has_range:
                end1, end2 = _int(tokens, pos + 1), _int(tokens, pos + 2)
                home, direction = _int(tokens, pos + 3), _int(tokens, pos + 4)
                spec = _build(SensorAttachSpec, kind, tag_idx, end1, end2, home, direction,
                              token_index=pos)
                pos += 5
            else:
                direction = _int(tokens, pos + 1)
                spec = _build(SensorAttachSpec, kind, tag_idx, None, None, None, direction,
                              token_index=pos)
                pos += 2
            specs.append(spec)
        _exact_arity(tokens, pos)
        return _build(AttachSensors, motor, tuple(specs), token_index=0)
    if op == "SM":
        motor = _need_index(op, idx)
        steps = _int(tokens, 1)
        _exact_arity(tokens, 2)
        return _build(MoveStepper, motor, steps, token_index=1)
    if op == "SG":
        motor = _need_index(op, idx)
        position = _int(tokens, 1)
        _exact_arity(tokens, 2)
        return _build(GotoSensorPosition, motor, position, token_index=1)
    if op == "SS":
        motor = _need_index(op, idx)
        speed, accel = _int(tokens, 1), _int(tokens, 2)
        _exact_arity(tokens, 3)
        return _build(SetSpeedAccel, motor, speed, accel, token_index=1)
    if op in ("SH", "SD", "SL", "ST", "AD"):
        motor = _need_index(op, idx)
        _exact_arity(tokens, 1)
        ctor = {"SH": GoHomeStepper, "SD": DisableStepper, "SL": LockStepper,
                "ST": StopStepper, "AD": RemoveAttachedSensors}[op]
        return _build(ctor, motor, token_index=0)
    if op == "VM":
        servo = _need_index(op, idx)
        position = _int(tokens, 1)
        _exact_arity(tokens, 2)
        return _build(MoveServo, servo, position, token_index=1)
    if op == "VH":
        servo = _need_index(op, idx)
        _exact_arity(tokens, 1)
        return _build(HomeServo, servo, token_index=0)
    if op == "RA":
        sensor = _need_index(op, idx)
        _exact_arity(tokens, 1)
        return _build(ReadAS5147, sensor, token_index=0)
    if op == "RU":
        sensor = _need_index(op, idx)
        _exact_arity(tokens, 1)
        return _build(ReadUltrasonic, sensor, token_index=0)
    raise UnknownOpcodeError(f"unknown command opcode {op!r}", token_index=0)


def decode_response(frame: bytes) -> Response:
    """Parse one `#`-terminated frame into a Response (inverse of encode)."""
    if isinstance(frame, str):
        frame = frame.encode("ascii", errors="replace")
    if not frame.endswith(b"#"):
        raise MissingTerminatorError("frame does not end with '#'")
    raw = frame[:-1].decode("latin-1")

    # Info payload is verbatim: "I <text>#". Only leading CR/LF is framing noise.
    probe = raw.lstrip("\r\n")
    if probe == "I" or probe.startswith("I ") or probe.startswith("I\t"):
        return _build(Info, probe[2:] if len(probe) > 1 else "")

    body = raw.strip()
    if not body:
        raise EmptyFrameError("frame has no body")
    tokens = body.split()
    if not tokens:
        raise EmptyFrameError("frame has no tokens")

    if tokens[0] == "E":
        _exact_arity(tokens, 1)
        return Error()
    # Version text ("V2019.05.10.0") is not an opcode+index token.
    if tokens[0].startswith("V") and not _OPCODE_RE.match(tokens[0]):
        _exact_arity(tokens, 1)
        return _build(Version, tokens[0][1:], token_index=0)

    op, idx = _split_opcode(tokens[0])
    if op == "T":
        _no_index(op, idx)
        _exact_arity(tokens, 1)
        return Alive()
    if op in ("CS", "CV", "CA"):
        _no_index(op, idx)
        _exact_arity(tokens, 1)
        return {"CS": SteppersCreated, "CV": ServosCreated, "CA": AS5147sCreated}[op]()
    if op == "SM":
        motor = _need_index(op, idx)
        d = _int(tokens, 1)
        _exact_arity(tokens, 2)
        return _build(StepperMoveDone, motor, d, token_index=1)
    if op == "VM":
        servo = _need_index(op, idx)
        d = _int(tokens, 1)
        _exact_arity(tokens, 2)
        return _build(ServoMoveDone, servo, d, token_index=1)
    if op == "RA":
        sensor = _need_index(op, idx)
        angle = _int(tokens, 1)
        _exact_arity(tokens, 2)
        return _build(AS5147Reading, sensor, angle, token_index=1)
    if op == "RU":
        sensor = _need_index(op, idx)
        cm = _int(tokens, 1)
        _exact_arity(tokens, 2)
        return _build(UltrasonicReading, sensor, cm, token_index=1)
    if op in ("AS", "SH", "SD", "SL", "SS", "ST", "VH", "AD"):
        index = _need_index(op, idx)
        _exact_arity(tokens, 1)
        ctor = {"AS": SensorsAttached, "SH": StepperHomed, "SD": StepperDisabled,
                "SL": StepperLocked, "SS": SpeedAccelSet, "ST": StepperStopped,
                "VH": ServoHomed, "AD": SensorsRemoved}[op]
        return _build(ctor, index, token_index=0)
    raise UnknownOpcodeError(f"unknown response opcode {op!r}", token_index=0)
