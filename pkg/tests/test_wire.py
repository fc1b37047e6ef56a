import pytest

from jenny5.scufy import wire

# Literal frames the firmware documents, with the value each must decode to.
COMMAND_GOLDEN = [
    (b"T#", wire.TestConnection()),
    (b"V#", wire.GetVersion()),
    (b"CS 3 5 4 12 7 6 12 9 8 12#", wire.CreateSteppers(((5, 4, 12), (7, 6, 12), (9, 8, 12)))),
    (b"CA 3 18 19 20#", wire.CreateAS5147s((18, 19, 20))),
    (
        b"AS0 1 A0 280 320 300 1#",
        wire.AttachSensors(0, (wire.SensorAttachSpec(wire.SensorKind.AS5147, 0, 280, 320, 300, 1),)),
    ),
    (b"SM1 100#", wire.MoveStepper(1, 100)),
    (b"SG1 100#", wire.GotoSensorPosition(1, 100)),
]

RESPONSE_GOLDEN = [
    (b"T#", wire.Alive()),
    (b"V2019.05.10.0#", wire.Version("2019.05.10.0")),
    (b"CS#", wire.SteppersCreated()),
    (b"CA#", wire.AS5147sCreated()),
    (b"AS0#", wire.SensorsAttached(0)),
    (b"SM1 0#", wire.StepperMoveDone(1, 0)),
    (b"E#", wire.Error()),
]


@pytest.mark.parametrize("frame,expected", COMMAND_GOLDEN, ids=lambda v: repr(v))
def test_command_golden_decode_and_reencode(frame, expected):
    decoded = wire.decode_command(frame)
    assert decoded == expected
    assert wire.encode_command(decoded) == frame


@pytest.mark.parametrize("frame,expected", RESPONSE_GOLDEN, ids=lambda v: repr(v))
def test_response_golden_decode_and_reencode(frame, expected):
    decoded = wire.decode_response(frame)
    assert decoded == expected
    assert wire.encode_response(decoded) == frame


def test_encode_examples_from_values():
    assert wire.encode_command(wire.MoveStepper(1, 100)) == b"SM1 100#"
    assert wire.encode_command(wire.CreateSteppers(((5, 4, 12), (7, 6, 12), (9, 8, 12)))) == \
        b"CS 3 5 4 12 7 6 12 9 8 12#"
    assert wire.encode_command(
        wire.AttachSensors(0, (wire.SensorAttachSpec(wire.SensorKind.AS5147, 0, 280, 320, 300, 1),))
    ) == b"AS0 1 A0 280 320 300 1#"
    assert wire.encode_command(wire.CreateAS5147s((18, 19, 20))) == b"CA 3 18 19 20#"
    assert wire.encode_response(wire.Version("2019.05.10.0")) == b"V2019.05.10.0#"
    assert wire.encode_response(wire.StepperMoveDone(1, 0)) == b"SM1 0#"
    assert wire.encode_response(wire.Alive()) == b"T#"


def test_mixed_attach_group_order():
    cmd = wire.AttachSensors(
        0,
        (
            wire.SensorAttachSpec(wire.SensorKind.AS5147, 0, 280, 320, 300, 1),
            wire.SensorAttachSpec(wire.SensorKind.BUTTON, 0, direction=1),
        ),
    )
    assert wire.encode_command(cmd) == b"AS0 2 A0 280 320 300 1 B0 1#"
    assert wire.decode_command(b"AS0 2 A0 280 320 300 1 B0 1#") == cmd


def test_decode_tolerates_extra_whitespace_and_crlf():
    assert wire.decode_command(b"SM1    100#") == wire.MoveStepper(1, 100)
    assert wire.decode_command(b"SM1 100\r\n#") == wire.MoveStepper(1, 100)
    assert wire.decode_command(b"\r\nSM1 100#") == wire.MoveStepper(1, 100)
    assert wire.decode_response(b"SM1  0\r#") == wire.StepperMoveDone(1, 0)


def test_decode_command_error_taxonomy():
    with pytest.raises(wire.ArityMismatchError):
        wire.decode_command(b"SM#")  # missing both fields
    with pytest.raises(wire.EmptyFrameError):
        wire.decode_command(b"#")
    with pytest.raises(wire.UnknownOpcodeError):
        wire.decode_command(b"XQ1 5#")
    with pytest.raises(wire.NonNumericFieldError) as exc:
        wire.decode_command(b"SM1 abc#")
    assert exc.value.token_index == 1
    with pytest.raises(wire.MissingTerminatorError):
        wire.decode_command(b"SM1 100")
    with pytest.raises(wire.ArityMismatchError):
        wire.decode_command(b"SM1 100 7#")  # trailing junk token
    with pytest.raises(wire.ScufyDecodeError):
        wire.decode_command(b"SM1000 5#")  # index out of range


def test_decode_response_error_taxonomy():
    with pytest.raises(wire.ArityMismatchError):
        wire.decode_response(b"SM1#")  # completion needs distance field
    with pytest.raises(wire.ScufyDecodeError):
        wire.decode_response(b"SM1 -5#")  # distance_to_go must be >= 0
    with pytest.raises(wire.ScufyDecodeError):
        wire.decode_response(b"V#")  # bare V is not a version report
    with pytest.raises(wire.ScufyDecodeError):
        wire.decode_response(b"V1.2#")  # not year.month.day.build


def test_info_payload_is_verbatim():
    assert wire.decode_response(b"I starting move#") == wire.Info("starting move")
    assert wire.decode_response(b"I  padded #") == wire.Info(" padded ")
    assert wire.encode_response(wire.Info("a  b")) == b"I a  b#"
    assert wire.decode_response(wire.encode_response(wire.Info(""))) == wire.Info("")


def test_servo_frames_round_trip():
    assert wire.decode_command(b"VM0 90#") == wire.MoveServo(0, 90)
    assert wire.decode_response(b"VM0 1#") == wire.ServoMoveDone(0, 1)
    assert wire.decode_response(b"VH0#") == wire.ServoHomed(0)


def test_extension_frames_round_trip():
    assert wire.decode_command(b"RU0#") == wire.ReadUltrasonic(0)
    assert wire.decode_response(b"RU0 100#") == wire.UltrasonicReading(0, 100)
    assert wire.decode_command(b"AD3#") == wire.RemoveAttachedSensors(3)
    assert wire.decode_response(b"AD3#") == wire.SensorsRemoved(3)
    assert wire.PROTOCOL_EXTENSIONS == ("RU", "AD")


def test_attach_spec_invariants():
    with pytest.raises(ValueError):
        wire.SensorAttachSpec(wire.SensorKind.AS5147, 0, 280, 320, 999, 1)  # home out of band
    with pytest.raises(ValueError):
        wire.SensorAttachSpec(wire.SensorKind.AS5147, 0, 280, 320, 300, 2)  # bad direction
    with pytest.raises(ValueError):
        wire.SensorAttachSpec(wire.SensorKind.BUTTON, 0, 1, 2, 1, 1)  # button carries no range
    # inverted end order is fine as long as home is inside
    spec = wire.SensorAttachSpec(wire.SensorKind.POTENTIOMETER, 1, 320, 280, 300, -1)
    assert spec.wire_tokens() == ["P1", "320", "280", "300", "-1"]
