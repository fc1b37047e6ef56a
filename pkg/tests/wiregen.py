"""Seeded random generators for wire values, shared by fuzz and acceptance tests."""

from __future__ import annotations

import random
import string

from jenny5.scufy import wire

PRINTABLE = "".join(c for c in string.printable if c not in "#\r\n\t\x0b\x0c")


def random_version(rng: random.Random) -> str:
    return ".".join(str(rng.randint(0, 3000)) for _ in range(4))


def random_attach_spec(rng: random.Random) -> wire.SensorAttachSpec:
    kind = rng.choice(list(wire.SensorKind))
    idx = rng.randint(0, wire.MAX_MOTOR_INDEX)
    direction = rng.choice((1, -1))
    if kind.has_range:
        end1 = rng.randint(-1000, 1000)
        end2 = rng.randint(-1000, 1000)
        lo, hi = min(end1, end2), max(end1, end2)
        home = rng.randint(lo, hi)
        return wire.SensorAttachSpec(kind, idx, end1, end2, home, direction)
    return wire.SensorAttachSpec(kind, idx, direction=direction)


def random_command(rng: random.Random) -> wire.Command:
    idx = rng.randint(0, wire.MAX_MOTOR_INDEX)
    pick = rng.randrange(17)
    if pick == 0:
        return wire.TestConnection()
    if pick == 1:
        return wire.GetVersion()
    if pick == 2:
        n = rng.randint(1, 6)
        triples = tuple(
            (rng.randint(0, 255), rng.randint(0, 255), rng.randint(0, 255)) for _ in range(n)
        )
        return wire.CreateSteppers(triples)
    if pick == 3:
        return wire.CreateServos(tuple(rng.randint(0, 255) for _ in range(rng.randint(1, 6))))
    if pick == 4:
        return wire.CreateAS5147s(tuple(rng.randint(0, 255) for _ in range(rng.randint(1, 6))))
    if pick == 5:
        specs = tuple(random_attach_spec(rng) for _ in range(rng.randint(1, 4)))
        return wire.AttachSensors(idx, specs)
    if pick == 6:
        return wire.MoveStepper(idx, rng.randint(wire.INT32_MIN, wire.INT32_MAX))
    if pick == 7:
        return wire.GoHomeStepper(idx)
    if pick == 8:
        return wire.DisableStepper(idx)
    if pick == 9:
        return wire.LockStepper(idx)
    if pick == 10:
        return wire.StopStepper(idx)
    if pick == 11:
        return wire.SetSpeedAccel(idx, rng.randint(0, wire.UINT32_MAX), rng.randint(0, wire.UINT32_MAX))
    if pick == 12:
        return wire.GotoSensorPosition(idx, rng.randint(-10000, 10000))
    if pick == 13:
        return wire.MoveServo(idx, rng.randint(-400, 400))
    if pick == 14:
        return wire.HomeServo(idx)
    if pick == 15:
        return wire.ReadAS5147(idx)
    return rng.choice((wire.ReadUltrasonic(idx), wire.RemoveAttachedSensors(idx)))


def random_response(rng: random.Random) -> wire.Response:
    idx = rng.randint(0, wire.MAX_MOTOR_INDEX)
    pick = rng.randrange(19)
    if pick == 0:
        return wire.Alive()
    if pick == 1:
        return wire.Version(random_version(rng))
    if pick == 2:
        return wire.SteppersCreated()
    if pick == 3:
        return wire.ServosCreated()
    if pick == 4:
        return wire.AS5147sCreated()
    if pick == 5:
        return wire.SensorsAttached(idx)
    if pick == 6:
        return wire.StepperMoveDone(idx, rng.randint(0, 100000))
    if pick == 7:
        return wire.StepperHomed(idx)
    if pick == 8:
        return wire.StepperDisabled(idx)
    if pick == 9:
        return wire.StepperLocked(idx)
    if pick == 10:
        return wire.SpeedAccelSet(idx)
    if pick == 11:
        return wire.StepperStopped(idx)
    if pick == 12:
        return wire.ServoMoveDone(idx, rng.choice((0, 1)))
    if pick == 13:
        return wire.ServoHomed(idx)
    if pick == 14:
        return wire.AS5147Reading(idx, rng.randint(-100000, 100000))
    if pick == 15:
        return wire.UltrasonicReading(idx, rng.randint(0, 10000))
    if pick == 16:
        return wire.SensorsRemoved(idx)
    if pick == 17:
        return wire.Error()
    return wire.Info("".join(rng.choice(PRINTABLE) for _ in range(rng.randint(0, 30))))


def random_frame_bytes(rng: random.Random, max_len: int = 64) -> bytes:
    """Arbitrary bytes ending in '#', mostly ASCII-shaped with occasional noise."""
    n = rng.randint(0, max_len)
    if rng.random() < 0.7:
        body = bytes(rng.choice(b"ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 .-") for _ in range(n))
    else:
        body = bytes(rng.randrange(256) for _ in range(n))
    return body.replace(b"#", b".") + b"#"
