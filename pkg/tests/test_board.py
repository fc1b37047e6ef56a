import math
import random

import pytest

from jenny5.firmware.board import VirtualBoard
from jenny5.firmware.config import BoardConfig
from jenny5.firmware.motion import JointBinding, MotorState

DT = 0.005


def make_board(ups=1.0, offset=280.0, direction=1, default_speed=500.0,
               default_accel=1e9, extra_bindings=()):
    cfg = BoardConfig(
        bindings=[JointBinding(0, 0, ups, offset, direction), *extra_bindings],
        default_speed=default_speed,
        default_acceleration=default_accel,
    )
    return VirtualBoard(cfg)


def boot(board: VirtualBoard) -> None:
    board.submit("CS 3 5 4 12 7 6 12 9 8 12#")
    board.submit("CA 3 18 19 20#")
    assert board.tick(DT) == [b"CS#", b"CA#"]


def run_until(board: VirtualBoard, predicate, max_ticks=100000):
    collected = []
    for _ in range(max_ticks):
        collected.extend(board.tick(DT))
        if predicate(collected):
            return collected
    raise AssertionError(f"condition not reached; got {collected}")


def test_alive_and_version():
    board = VirtualBoard()
    board.submit("T#")
    assert board.tick(DT) == [b"T#"]
    board.submit("V#")
    assert board.tick(DT) == [b"V2019.05.10.0#"]


def test_motion_before_controller_is_rejected():
    board = VirtualBoard()
    board.submit("SM0 10#")
    assert board.tick(DT) == [b"E#"]


def test_malformed_frame_is_rejected():
    board = VirtualBoard()
    board.submit("SM abc#")
    assert board.tick(DT) == [b"E#"]


def test_bad_index_is_rejected():
    board = make_board()
    boot(board)
    board.submit("SM9 10#")
    assert board.tick(DT) == [b"E#"]


def test_zero_step_move_completes_immediately():
    board = make_board()
    boot(board)
    board.submit("SM0 0#")
    assert board.tick(DT) == [b"SM0 0#"]


def test_alive_answered_within_one_tick_while_moving():
    board = make_board()
    boot(board)
    for i in range(3):
        board.submit(f"SM{i} 100000#")
    board.tick(DT)  # moves underway
    board.submit("T#")
    frames = board.tick(DT)
    assert b"T#" in frames


def test_move_completion_time_matches_profile():
    board = make_board(default_speed=1000.0, default_accel=1e9)
    boot(board)
    board.submit("SM1 100#")
    ticks = 0
    done = []
    while not done:
        done = [f for f in board.tick(DT) if f.startswith(b"SM1")]
        ticks += 1
        assert ticks < 1000
    assert done == [b"SM1 0#"]
    assert abs(ticks * DT - 0.1) <= DT + 1e-9  # 100 steps at 1000 steps/s


def test_go_home_moves_to_sensor_home():
    # reading starts at 280 (offset), home is 300, 1 unit/step: +20 steps
    board = make_board(ups=1.0, offset=280.0, direction=1)
    boot(board)
    board.submit("AS0 1 A0 280 320 300 1#")
    assert board.tick(DT) == [b"AS0#"]
    board.submit("SH0#")
    frames = run_until(board, lambda fs: b"SH0#" in fs)
    assert frames[-1] == b"SH0#"
    assert board.steppers[0].position == 20.0
    assert board.sensor_reading(0) == pytest.approx(300.0)


def test_go_home_without_sensor_is_immediate():
    board = make_board()
    boot(board)
    board.submit("SH0#")
    assert board.tick(DT) == [b"SH0#"]
    assert board.steppers[0].position == 0.0


def test_go_home_with_negative_direction_binding():
    # direction -1: reading 320 at rest, home 300 -> +20 steps, reading falls
    board = make_board(ups=1.0, offset=320.0, direction=-1)
    boot(board)
    board.submit("AS0 1 A0 280 320 300 -1#")
    board.tick(DT)
    board.submit("SH0#")
    run_until(board, lambda fs: b"SH0#" in fs)
    assert board.steppers[0].position == 20.0
    assert board.sensor_reading(0) == pytest.approx(300.0)


def test_guard_halts_move_and_reports_distance():
    board = make_board(ups=1.0, offset=280.0)
    boot(board)
    board.submit("AS0 1 A0 280 320 300 1#")
    board.tick(DT)
    board.submit("SM0 100#")  # would reach reading 380; guard stops at 320
    frames = run_until(board, lambda fs: any(f.startswith(b"SM0") for f in fs))
    completion = [f for f in frames if f.startswith(b"SM0")][-1]
    assert completion == b"SM0 60#"  # 100 commanded, 40 travelled
    assert board.sensor_reading(0) == pytest.approx(320.0)
    assert board.steppers[0].state is MotorState.LOCKED


def test_goto_sensor_position_unit_transmission():
    board = make_board(ups=1.0, offset=0.0)
    boot(board)
    board.submit("AS0 1 A0 0 200 100 1#")
    board.tick(DT)
    board.submit("SM0 40#")
    run_until(board, lambda fs: b"SM0 0#" in fs)
    board.submit("SG0 100#")
    frames = run_until(board, lambda fs: any(f.startswith(b"SM0") for f in fs))
    assert frames[-1] == b"SM0 0#"
    assert board.steppers[0].position == 100.0


def test_goto_sensor_position_out_of_band_clamps_at_nearer_bound():
    board = make_board(ups=1.0, offset=0.0)
    boot(board)
    board.submit("AS0 1 A0 0 200 100 1#")
    board.tick(DT)
    board.submit("SG0 500#")
    frames = run_until(board, lambda fs: any(f.startswith(b"SM0") for f in fs))
    completion = frames[-1]
    assert completion == b"SM0 300#"  # halted at reading 200, 300 short of 500
    assert board.sensor_reading(0) == pytest.approx(200.0)


def test_goto_sensor_position_without_sensor_is_error():
    board = make_board()
    boot(board)
    board.submit("SG1 100#")  # motor 1 has no attached sensor
    assert board.tick(DT) == [b"E#"]


def test_stop_supersedes_move_single_completion():
    board = make_board(default_speed=100.0)
    boot(board)
    board.submit("SM0 100000#")
    board.tick(DT)
    board.submit("ST0#")
    frames = board.tick(DT)
    assert frames == [b"ST0#"]
    # the aborted move must never report
    for _ in range(200):
        assert board.tick(DT) == []
    assert board.steppers[0].velocity == 0.0


def test_new_move_supersedes_old_single_completion():
    board = make_board(default_speed=1000.0, default_accel=1e9)
    boot(board)
    board.submit("SM0 100000#")
    board.tick(DT)
    board.submit("SM0 5#")  # relative to current position
    frames = run_until(board, lambda fs: any(f.startswith(b"SM0") for f in fs))
    completions = [f for f in frames if f.startswith(b"SM0")]
    assert completions == [b"SM0 0#"]  # exactly one, for the superseding move
    for _ in range(50):
        assert board.tick(DT) == []


def test_disable_lock_and_set_speed_acks():
    board = make_board()
    boot(board)
    board.submit("SD0#")
    assert board.tick(DT) == [b"SD0#"]
    assert board.steppers[0].state is MotorState.DISABLED
    board.submit("SL0#")
    assert board.tick(DT) == [b"SL0#"]
    assert board.steppers[0].state is MotorState.LOCKED
    board.submit("SS0 1500 100#")
    assert board.tick(DT) == [b"SS0#"]
    assert board.steppers[0].max_speed == 1500.0
    assert board.steppers[0].acceleration == 100.0


def test_set_speed_then_long_move_peaks_at_speed():
    board = make_board()
    boot(board)
    board.submit("SS0 1500 100#")
    board.tick(DT)
    board.submit("SM0 50000#")
    peak = 0.0
    for _ in range(200000):
        frames = board.tick(DT)
        peak = max(peak, abs(board.steppers[0].velocity))
        if any(f.startswith(b"SM0") for f in frames):
            break
    assert peak == pytest.approx(1500.0)


def test_servo_moves_and_clamps():
    board = VirtualBoard()
    board.submit("CV 2 13 14#")
    assert board.tick(DT) == [b"CV#"]
    board.submit("VM0 90#")
    assert board.tick(DT) == [b"VM0 0#"]
    assert board.servos[0].position == 90
    board.submit("VM0 270#")
    assert board.tick(DT) == [b"VM0 1#"]
    assert board.servos[0].position == 180
    board.submit("VH0#")
    assert board.tick(DT) == [b"VH0#"]
    assert board.servos[0].position == board.servos[0].home


def test_read_as5147_bound_and_unbound():
    board = make_board(ups=1.0, offset=280.0)
    boot(board)
    board.submit("AS0 1 A0 280 320 300 1#")
    board.tick(DT)
    board.submit("SH0#")
    run_until(board, lambda fs: b"SH0#" in fs)
    board.submit("RA0#")
    assert board.tick(DT) == [b"RA0 300#"]
    board.submit("RA1#")  # unbound sensor falls back to its static default
    assert board.tick(DT) == [b"RA1 0#"]
    board.submit("SM0 20#")
    run_until(board, lambda fs: b"SM0 0#" in fs)
    board.submit("RA0#")
    assert board.tick(DT) == [b"RA0 320#"]


def test_read_ultrasonic_scenario_default():
    board = VirtualBoard()
    board.submit("RU0#")
    assert board.tick(DT) == [b"RU0 100#"]


def test_remove_attached_sensors():
    board = make_board()
    boot(board)
    board.submit("AS0 1 A0 280 320 300 1#")
    board.tick(DT)
    board.submit("AD0#")
    assert board.tick(DT) == [b"AD0#"]
    assert board.steppers[0].attached == ()
    board.submit("SH0#")  # nothing attached anymore: immediate ack
    assert board.tick(DT) == [b"SH0#"]


def test_recreating_controller_replaces_it():
    board = make_board()
    boot(board)
    board.submit("SM0 1000#")
    board.tick(DT)
    board.submit("CS 1 2 3 4#")
    assert board.tick(DT) == [b"CS#"]
    assert len(board.steppers) == 1
    assert board.steppers[0].position == 0.0
    for _ in range(50):
        assert board.tick(DT) == []  # the old pending move is gone


def test_kinematic_consistency_every_tick():
    board = make_board(ups=0.25, offset=300.0, direction=-1)
    boot(board)
    board.submit("SM0 4000#")
    for _ in range(3000):
        board.tick(DT)
        motor = board.steppers[0]
        expected = 300.0 + (-1) * 0.25 * motor.position
        assert board.sensor_reading(0) == expected  # exact, no drift


def test_determinism_identical_traces():
    def run() -> list[bytes]:
        board = make_board(default_speed=777.0, default_accel=3456.0)
        out = []
        boot(board)
        board.submit("AS0 1 A0 280 320 300 1#")
        board.submit("SM0 35#")
        board.submit("SM1 -400#")
        for i in range(400):
            if i == 37:
                board.submit("ST1#")
            if i == 90:
                board.submit("SH0#")
            out.extend(board.tick(DT))
        return out

    assert run() == run()


def test_guard_band_never_exceeded_under_random_commands():
    rng = random.Random(2024)
    board = make_board(ups=1.0, offset=300.0)
    boot(board)
    board.submit("SS0 1500 100000#")
    board.submit("AS0 1 A0 280 320 300 1#")
    board.tick(DT)
    lo, hi = 280.0, 320.0
    for _ in range(1000):
        roll = rng.random()
        if roll < 0.5:
            board.submit(f"SM0 {rng.randint(-4000, 4000)}#")
        elif roll < 0.7:
            board.submit(f"SG0 {rng.randint(0, 600)}#")
        elif roll < 0.8:
            board.submit("ST0#")
        elif roll < 0.9:
            board.submit("SH0#")
        else:
            board.submit(f"SS0 {rng.randint(1, 1500)} {rng.randint(1, 100000)}#")
        for _ in range(rng.randint(1, 5)):
            board.tick(DT)
            reading = board.sensor_reading(0)
            assert lo - 1e-6 <= reading <= hi + 1e-6


def test_tick_rejects_bad_dt():
    board = VirtualBoard()
    with pytest.raises(ValueError):
        board.tick(0.0)
    with pytest.raises(ValueError):
        board.tick(0.2)


def test_response_order_is_submission_order():
    board = make_board()
    boot(board)
    board.submit("T#")
    board.submit("V#")
    board.submit("SM0 0#")
    board.submit("T#")
    assert board.tick(DT) == [b"T#", b"V2019.05.10.0#", b"SM0 0#", b"T#"]


def test_arm_sweep_timing_with_physical_ratios():
    # shoulder drivetrain: 1.8 deg step, 50:1 gearbox, 47:14 belt, 1500 steps/s
    ups = float(63) / 5875  # sensor degrees per motor step
    steps_180 = round(180 / ups)
    board = make_board(ups=ups, offset=300.0, default_speed=1500.0, default_accel=3000.0)
    boot(board)
    board.submit(f"SM0 {steps_180}#")
    ticks = 0
    finished = False
    while not finished and ticks < 10**6:
        frames = board.tick(DT)
        ticks += 1
        finished = any(f.startswith(b"SM0") for f in frames)
    sim_seconds = ticks * DT
    # constant-speed chain gives 11.19 s; the ramp at 3000 steps/s^2 adds 0.5 s
    expected = steps_180 / 1500.0 + 1500.0 / 3000.0
    assert math.isclose(sim_seconds, expected, abs_tol=DT + 1e-9)
    assert 11.0 <= sim_seconds <= 12.5
