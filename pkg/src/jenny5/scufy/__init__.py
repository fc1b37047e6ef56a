"""Scufy serial wire grammar: typed commands/responses and stream framing."""

from jenny5.scufy.framing import BufferOverflowError, FrameDecoder
from jenny5.scufy.wire import (
    MAX_MOTOR_INDEX,
    PROTOCOL_EXTENSIONS,
    Alive,
    ArityMismatchError,
    AS5147Reading,
    AS5147sCreated,
    AttachSensors,
    Command,
    CreateAS5147s,
    CreateServos,
    CreateSteppers,
    DisableStepper,
    EmptyFrameError,
    Error,
    GetVersion,
    GoHomeStepper,
    GotoSensorPosition,
    Info,
    LockStepper,
    MissingTerminatorError,
    MoveServo,
    MoveStepper,
    NonNumericFieldError,
    ReadAS5147,
    ReadUltrasonic,
    RemoveAttachedSensors,
    Response,
    ScufyDecodeError,
    SensorAttachSpec,
    SensorKind,
    SensorsAttached,
    SensorsRemoved,
    ServoHomed,
    ServoMoveDone,
    ServosCreated,
    SetSpeedAccel,
    SpeedAccelSet,
    StepperDisabled,
    StepperHomed,
    StepperLocked,
    StepperMoveDone,
    StepperStopped,
    SteppersCreated,
    StopStepper,
    TestConnection,
    UltrasonicReading,
    UnknownOpcodeError,
    ValueOutOfRangeError,
    Version,
    HomeServo,
    decode_command,
    decode_response,
    encode_command,
    encode_response,
)

__all__ = [
    "Alive",
    "ArityMismatchError",
    "AS5147Reading",
    "AS5147sCreated",
    "AttachSensors",
    "BufferOverflowError",
    "Command",
    "CreateAS5147s",
    "CreateServos",
    "CreateSteppers",
    "DisableStepper",
    "EmptyFrameError",
    "Error",
    "FrameDecoder",
    "GetVersion",
    "GoHomeStepper",
    "GotoSensorPosition",
    "HomeServo",
    "Info",
    "LockStepper",
    "MAX_MOTOR_INDEX",
    "MissingTerminatorError",
    "MoveServo",
    "MoveStepper",
    "NonNumericFieldError",
    "PROTOCOL_EXTENSIONS",
    "ReadAS5147",
    "ReadUltrasonic",
    "RemoveAttachedSensors",
    "Response",
    "ScufyDecodeError",
    "SensorAttachSpec",
    "SensorKind",
    "SensorsAttached",
    "SensorsRemoved",
    "ServoHomed",
    "ServoMoveDone",
    "ServosCreated",
    "SetSpeedAccel",
    "SpeedAccelSet",
    "StepperDisabled",
    "StepperHomed",
    "StepperLocked",
    "StepperMoveDone",
    "StepperStopped",
    "SteppersCreated",
    "StopStepper",
    "TestConnection",
    "UltrasonicReading",
    "UnknownOpcodeError",
    "ValueOutOfRangeError",
    "Version",
    "decode_command",
    "decode_response",
    "encode_command",
    "encode_response",
]
