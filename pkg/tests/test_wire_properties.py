"""Property suites for the wire grammar: round trips, chunk invariance, totality."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from jenny5.scufy import FrameDecoder, BufferOverflowError, wire

from tests.wiregen import random_command, random_frame_bytes, random_response

index_st = st.integers(0, wire.MAX_MOTOR_INDEX)
pin_st = st.integers(0, 255)
steps_st = st.integers(wire.INT32_MIN, wire.INT32_MAX)
u32_st = st.integers(0, wire.UINT32_MAX)


@st.composite
def attach_spec_st(draw):
    kind = draw(st.sampled_from(list(wire.SensorKind)))
    idx = draw(index_st)
    direction = draw(st.sampled_from((1, -1)))
    if kind.has_range:
        end1 = draw(st.integers(-2000, 2000))
        end2 = draw(st.integers(-2000, 2000))
        home = draw(st.integers(min(end1, end2), max(end1, end2)))
        return wire.SensorAttachSpec(kind, idx, end1, end2, home, direction)
    return wire.SensorAttachSpec(kind, idx, direction=direction)


command_st = st.one_of(
    st.just(wire.TestConnection()),
    st.just(wire.GetVersion()),
    st.builds(wire.CreateSteppers, st.lists(st.tuples(pin_st, pin_st, pin_st), min_size=1, max_size=8).map(tuple)),
    st.builds(wire.CreateServos, st.lists(pin_st, min_size=1, max_size=8).map(tuple)),
    st.builds(wire.CreateAS5147s, st.lists(pin_st, min_size=1, max_size=8).map(tuple)),
    st.builds(wire.AttachSensors, index_st, st.lists(attach_spec_st(), min_size=1, max_size=4).map(tuple)),
    st.builds(wire.MoveStepper, index_st, steps_st),
    st.builds(wire.GoHomeStepper, index_st),
    st.builds(wire.DisableStepper, index_st),
    st.builds(wire.LockStepper, index_st),
    st.builds(wire.StopStepper, index_st),
    st.builds(wire.SetSpeedAccel, index_st, u32_st, u32_st),
    st.builds(wire.GotoSensorPosition, index_st, st.integers(-100000, 100000)),
    st.builds(wire.MoveServo, index_st, st.integers(-400, 400)),
    st.builds(wire.HomeServo, index_st),
    st.builds(wire.ReadAS5147, index_st),
    st.builds(wire.ReadUltrasonic, index_st),
    st.builds(wire.RemoveAttachedSensors, index_st),
)

info_text_st = st.text(
    alphabet=st.characters(min_codepoint=32, max_codepoint=126, exclude_characters="#"),
    max_size=40,
)

response_st = st.one_of(
    st.just(wire.Alive()),
    st.builds(wire.Version, st.tuples(u32_st, u32_st, u32_st, u32_st).map(lambda t: ".".join(map(str, t)))),
    st.just(wire.SteppersCreated()),
    st.just(wire.ServosCreated()),
    st.just(wire.AS5147sCreated()),
    st.builds(wire.SensorsAttached, index_st),
    st.builds(wire.StepperMoveDone, index_st, st.integers(0, wire.INT32_MAX)),
    st.builds(wire.StepperHomed, index_st),
    st.builds(wire.StepperDisabled, index_st),
    st.builds(wire.StepperLocked, index_st),
    st.builds(wire.SpeedAccelSet, index_st),
    st.builds(wire.StepperStopped, index_st),
    st.builds(wire.ServoMoveDone, index_st, st.sampled_from((0, 1))),
    st.builds(wire.ServoHomed, index_st),
    st.builds(wire.AS5147Reading, index_st, st.integers(-100000, 100000)),
    st.builds(wire.UltrasonicReading, index_st, st.integers(0, 100000)),
    st.builds(wire.SensorsRemoved, index_st),
    st.just(wire.Error()),
    st.builds(wire.Info, info_text_st),
)


@given(command_st)
def test_command_round_trip(cmd):
    assert wire.decode_command(wire.encode_command(cmd)) == cmd


@given(response_st)
def test_response_round_trip(resp):
    assert wire.decode_response(wire.encode_response(resp)) == resp


@given(st.lists(command_st, max_size=12), st.randoms(use_true_random=False))
def test_chunk_invariance(cmds, rng):
    stream = b"".join(wire.encode_command(c) for c in cmds)
    whole = FrameDecoder().feed(stream)
    dec = FrameDecoder()
    out = []
    i = 0
    while i < len(stream):
        j = min(len(stream), i + rng.randint(1, 9))
        out.extend(dec.feed(stream[i:j]))
        i = j
    assert out == whole
    assert [wire.decode_command(f) for f in whole] == cmds


@settings(max_examples=300)
@given(st.binary(max_size=511).map(lambda b: b.replace(b"#", b".") + b"#"))
def test_decode_totality_on_arbitrary_frames(frame):
    for decoder in (wire.decode_command, wire.decode_response):
        try:
            decoder(frame)
        except wire.ScufyDecodeError:
            pass  # typed decline is the contract; anything else would crash the test


def test_decode_totality_seeded_fuzz():
    rng = random.Random(20240515)
    for _ in range(20000):
        frame = random_frame_bytes(rng)
        for decoder in (wire.decode_command, wire.decode_response):
            try:
                decoder(frame)
            except wire.ScufyDecodeError:
                pass


def test_seeded_generators_round_trip():
    rng = random.Random(7)
    for _ in range(2000):
        cmd = random_command(rng)
        assert wire.decode_command(wire.encode_command(cmd)) == cmd
        resp = random_response(rng)
        assert wire.decode_response(wire.encode_response(resp)) == resp


def test_overflow_recovery_with_valid_traffic():
    dec = FrameDecoder()
    try:
        dec.feed(b"Q" * 2000)
    except BufferOverflowError:
        pass
    assert dec.feed(b"#SM1 100#") == [b"SM1 100#"]
