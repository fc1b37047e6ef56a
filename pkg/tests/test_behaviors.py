"""Control-law tests, including closed-loop convergence under simulated optics.

The optics oracle: a face sits at a fixed target angle; the normalized offset
the camera would report is (target - current) / half-field-of-view, clamped
to -1..1. Centering must drive that offset under the deadband.
"""

import pytest

from jenny5.teleop.behaviors import center_head_step, follow_person_step

KP = 200.0
DEADBAND = 0.05
FOV_HALF_DEG = 30.0
HEAD_DEG_PER_STEP = 1.0 / 15.0  # 1.8 deg motor step through a 27:1 gearbox


def offset_for(current_deg: float, target_deg: float) -> float:
    raw = (target_deg - current_deg) / FOV_HALF_DEG
    return max(-1.0, min(1.0, raw))


def test_center_step_is_proportional_and_opposing():
    assert center_head_step(0.5, 0.0, KP, DEADBAND) == (-100, 0)
    assert center_head_step(0.0, -0.25, KP, DEADBAND) == (0, 50)
    assert center_head_step(-1.0, 1.0, KP, DEADBAND) == (200, -200)


def test_center_step_deadband_suppresses_commands():
    assert center_head_step(0.0, 0.0, KP, DEADBAND) is None
    assert center_head_step(0.049, -0.049, KP, DEADBAND) is None
    assert center_head_step(0.05, 0.0, KP, DEADBAND) is not None


def test_center_head_converges_under_simulated_optics():
    # pan axis only; the tilt axis is symmetric
    pan_deg = 180.0
    target_deg = 205.0
    for iteration in range(20):
        offset = offset_for(pan_deg, target_deg)
        if abs(offset) < DEADBAND:
            break
        correction = center_head_step(offset, 0.0, KP, DEADBAND)
        assert correction is not None
        pan_steps, _ = correction
        pan_deg += -pan_steps * HEAD_DEG_PER_STEP  # motor steps move the view
    else:
        pytest.fail("did not converge in 20 iterations")
    assert abs(offset_for(pan_deg, target_deg)) < DEADBAND
    assert iteration < 20


def test_center_head_error_strictly_decreases():
    pan_deg = 180.0
    target_deg = 200.0
    previous = abs(offset_for(pan_deg, target_deg))
    for _ in range(20):
        offset = offset_for(pan_deg, target_deg)
        if abs(offset) < DEADBAND:
            break
        pan_steps, _ = center_head_step(offset, 0.0, KP, DEADBAND)
        pan_deg += -pan_steps * HEAD_DEG_PER_STEP
        current = abs(offset_for(pan_deg, target_deg))
        assert current < previous
        previous = current


def test_follow_person_hysteresis():
    assert follow_person_step(0.8, 0.4, 0.6) == "backward"  # too close
    assert follow_person_step(0.2, 0.4, 0.6) == "forward"
    assert follow_person_step(0.5, 0.4, 0.6) == "stop"
    assert follow_person_step(0.4, 0.4, 0.6) == "stop"  # band edges hold still
    assert follow_person_step(0.6, 0.4, 0.6) == "stop"


def test_rate_limiter_caps_per_motor_rate():
    from jenny5.teleop.behaviors import RateLimiter

    t = [0.0]
    limiter = RateLimiter(0.1, clock=lambda: t[0])
    assert limiter.allow("head", 0)
    assert not limiter.allow("head", 0)  # same motor, same instant
    assert limiter.allow("head", 1)  # different motor is independent
    t[0] = 0.099
    assert not limiter.allow("head", 0)
    t[0] = 0.1
    assert limiter.allow("head", 0)


def test_rate_limiter_bounds_rate_under_flood():
    from jenny5.teleop.behaviors import RateLimiter

    t = [0.0]
    limiter = RateLimiter(0.1, clock=lambda: t[0])
    allowed = 0
    for i in range(1000):
        t[0] = i * 0.001  # 1 kHz flood for one second
        if limiter.allow("platform", 0):
            allowed += 1
    assert allowed <= 10
