"""The robot rig: one worker per subsystem over the simulators or real boards.

Every subsystem (left arm, right arm, head, platform, leg) gets a dedicated
writer thread that owns its client exclusively; all commands and reads are
jobs on that thread, which is what serializes outbound frames. A subsystem
that fails to come up (or dies later) flips to unhealthy and turns into
per-call errors; it never takes the rig down.

Endpoints: ``inproc`` boots the matching simulator inside this process;
``host:port`` connects out to a running ``scufy-sim`` / emulated board.
"""

from __future__ import annotations

import json
import queue
import threading
import time
from concurrent.futures import Future
from dataclasses import dataclass, field
from pathlib import Path

from jenny5.firmware.board import VirtualBoard
from jenny5.firmware.config import BoardConfig, load_board_config
from jenny5.firmware.runner import BoardRunner
from jenny5.host.client import ScufyClient
from jenny5.host.events import EventType
from jenny5.roboclaw.client import RoboClawClient
from jenny5.roboclaw.emulator import EmulatorConfig, RoboClawEmulator, load_emulator_config
from jenny5.serve import DeviceRunner, DuplexChannel
from jenny5.teleop.messages import GROUPS, SnapshotData

SETUP_DEADLINE_S = 3.0

SCUFY_GROUPS = ("left_arm", "right_arm", "head")
ROBOCLAW_GROUPS = ("platform", "leg")


class SubsystemUnavailableError(RuntimeError):
    pass


@dataclass
class SubsystemConfig:
    name: str
    kind: str  # "scufy" | "roboclaw"
    endpoint: str  # "inproc" | "host:port"
    config_path: Path | None = None


@dataclass
class RigGains:
    steps_per_degree: float = 50.0
    platform_duty_per_degree: float = 800.0
    platform_turn_duty_per_degree: float = 400.0
    leg_duty_per_degree: float = 800.0
    duty_acceleration: int = 655359
    text_pulse_duty: int = 8000


@dataclass
class BehaviorParams:
    kp_steps: float = 200.0
    deadband: float = 0.05
    follow_size_high: float = 0.6
    follow_size_low: float = 0.4
    follow_duty: int = 8000


@dataclass
class RigConfig:
    subsystems: dict[str, SubsystemConfig] = field(default_factory=dict)
    gains: RigGains = field(default_factory=RigGains)
    behaviors: BehaviorParams = field(default_factory=BehaviorParams)
    rate_limit_s: float = 0.1
    snapshot_timeout_s: float = 0.25
    sim_speed: float | None = None  # None free-runs embedded sims


def load_rig_config(path: str | Path) -> RigConfig:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("kind", "teleop-rig") != "teleop-rig":
        raise ValueError(f"{path}: not a teleop-rig config")
    subsystems = {}
    for name, sub in data.get("subsystems", {}).items():
        if name not in GROUPS:
            raise ValueError(f"{path}: unknown subsystem {name!r}")
        config_path = sub.get("config")
        subsystems[name] = SubsystemConfig(
            name=name,
            kind=sub.get("type", "scufy"),
            endpoint=sub.get("endpoint", "inproc"),
            config_path=(path.parent / config_path) if config_path else None,
        )
    gains_data = data.get("gains", {})
    gains = RigGains(
        steps_per_degree=float(gains_data.get("steps_per_degree", 50)),
        platform_duty_per_degree=float(gains_data.get("platform_duty_per_degree", 800)),
        platform_turn_duty_per_degree=float(gains_data.get("platform_turn_duty_per_degree", 400)),
        leg_duty_per_degree=float(gains_data.get("leg_duty_per_degree", 800)),
        duty_acceleration=int(gains_data.get("duty_acceleration", 655359)),
        text_pulse_duty=int(gains_data.get("text_pulse_duty", 8000)),
    )
    behavior_data = data.get("behaviors", {})
    behaviors = BehaviorParams(
        kp_steps=float(behavior_data.get("kp_steps", 200)),
        deadband=float(behavior_data.get("deadband", 0.05)),
        follow_size_high=float(behavior_data.get("follow_size_high", 0.6)),
        follow_size_low=float(behavior_data.get("follow_size_low", 0.4)),
        follow_duty=int(behavior_data.get("follow_duty", 8000)),
    )
    return RigConfig(
        subsystems=subsystems,
        gains=gains,
        behaviors=behaviors,
        rate_limit_s=float(data.get("rate_limit_s", 0.1)),
        snapshot_timeout_s=float(data.get("snapshot_timeout_s", 0.25)),
        sim_speed=data.get("sim_speed"),
    )


class _Worker(threading.Thread):
    """Single writer task: jobs run one at a time on this thread."""

    _STOP = object()

    def __init__(self, name: str):
        super().__init__(daemon=True, name=f"subsystem-{name}")
        self._jobs: queue.Queue = queue.Queue()

    def submit(self, fn) -> Future:
        future: Future = Future()
        self._jobs.put((fn, future))
        return future

    def shutdown(self) -> None:
        self._jobs.put((self._STOP, None))

    def run(self) -> None:
        while True:
            fn, future = self._jobs.get()
            if fn is self._STOP:
                return
            try:
                future.set_result(fn())
            except BaseException as exc:  # surfaced through the future
                future.set_exception(exc)


class Subsystem:
    """Common lifecycle: embedded sim (optional), worker, health flag."""

    def __init__(self, config: SubsystemConfig):
        self.config = config
        self.name = config.name
        self.healthy = False
        self.error: str | None = None
        self._worker = _Worker(config.name)
        self._worker.start()
        self._runner = None  # embedded sim runner, when endpoint == "inproc"

    def call(self, fn, timeout: float | None = 5.0):
        """Run a job on the writer thread and wait for its result."""
        if not self.healthy:
            raise SubsystemUnavailableError(self.error or f"{self.name} is down")
        try:
            return self._worker.submit(fn).result(timeout)
        except SubsystemUnavailableError:
            raise
        except Exception as exc:
            self.healthy = False
            self.error = f"{self.name}: {exc}"
            raise SubsystemUnavailableError(self.error) from exc

    def cast(self, fn) -> None:
        """Queue a fire-and-forget job (motion commands)."""
        if not self.healthy:
            raise SubsystemUnavailableError(self.error or f"{self.name} is down")
        self._worker.submit(fn)

    def start(self) -> None:
        try:
            self._worker.submit(self._setup).result(SETUP_DEADLINE_S + 2.0)
            self.healthy = True
        except Exception as exc:
            self.error = f"{self.name}: {exc}"
            self.healthy = False

    def _setup(self) -> None:  # pragma: no cover - overridden
        raise NotImplementedError

    def close(self) -> None:
        self._worker.shutdown()
        self._worker.join(timeout=2)
        if self._runner is not None:
            self._runner.stop()
            self._runner.join(timeout=2)


class ScufySubsystem(Subsystem):
    def __init__(self, config: SubsystemConfig, sim_speed: float | None = None):
        super().__init__(config)
        self.board_config = (
            load_board_config(config.config_path) if config.config_path else BoardConfig()
        )
        self.board: VirtualBoard | None = None
        self.client: ScufyClient | None = None
        self._sim_speed = sim_speed

    @property
    def motor_count(self) -> int:
        return self.board_config.stepper_count

    @property
    def sensor_indexes(self) -> list[int]:
        return [b.sensor_index for b in self.board_config.bindings]

    def _connect(self) -> None:
        if self.config.endpoint == "inproc":
            self.board = VirtualBoard(self.board_config)
            channel = DuplexChannel()
            self._runner = BoardRunner(self.board, channel, speed=self._sim_speed)
            self._runner.start()
            self.client = ScufyClient(channel.host_endpoint())
        else:
            self.client = ScufyClient.connect(self.config.endpoint)

    def _setup(self) -> None:
        """Connect, create controllers, attach sensors, set speeds; waits for acks."""
        self._connect()
        cfg = self.board_config
        client = self.client
        client.send_is_alive()
        if client.wait_for_event(EventType.IS_ALIVE, SETUP_DEADLINE_S) is None:
            raise SubsystemUnavailableError(f"{self.name}: no response to liveness probe")
        if cfg.stepper_count:
            client.send_create_stepper_motors(
                cfg.stepper_dir_pins, cfg.stepper_step_pins, cfg.stepper_enable_pins)
            if client.wait_for_event(EventType.STEPPERS_CONTROLLER_CREATED,
                                     SETUP_DEADLINE_S) is None:
                raise SubsystemUnavailableError(
                    f"cannot create {self.name} motors controller")
        if cfg.as5147_pins:
            client.send_create_as5147s(cfg.as5147_pins)
            if client.wait_for_event(EventType.AS5147_CONTROLLER_CREATED,
                                     SETUP_DEADLINE_S) is None:
                raise SubsystemUnavailableError(
                    f"cannot create {self.name} sensors controller")
        if cfg.servo_pins:
            client.send_create_servos(cfg.servo_pins)
            if client.wait_for_event(EventType.SERVOS_CONTROLLER_CREATED,
                                     SETUP_DEADLINE_S) is None:
                raise SubsystemUnavailableError(
                    f"cannot create {self.name} servos controller")
        for preset in cfg.attach:
            self.client.send_attach_sensors_to_stepper_motor(
                preset.motor,
                as5147s=[(preset.sensor, preset.end1, preset.end2, preset.home,
                          preset.direction)],
            )
            if client.wait_for_event(EventType.SENSORS_ATTACHED, SETUP_DEADLINE_S,
                                     param1=preset.motor) is None:
                raise SubsystemUnavailableError(
                    f"cannot attach sensors on {self.name} motor {preset.motor}")
        for motor, (speed, accel) in enumerate(cfg.speed_accel):
            client.send_set_stepper_motor_speed_and_acceleration(motor, speed, accel)
            if client.wait_for_event(EventType.SPEED_ACCEL_SET, SETUP_DEADLINE_S,
                                     param1=motor) is None:
                raise SubsystemUnavailableError(
                    f"cannot set speed on {self.name} motor {motor}")

    # motion commands are casts: superseding semantics make dropping safe

    def move_motor(self, motor: int, steps: int) -> None:
        self.cast(lambda: self.client.send_move_stepper_motor(motor, steps))

    def move_pair(self, m1: int, steps1: int, m2: int, steps2: int) -> None:
        self.cast(lambda: self.client.send_move_stepper_motor2(m1, steps1, m2, steps2))

    def home_all(self) -> None:
        def job():
            for motor in range(self.motor_count):
                self.client.send_go_home_stepper_motor(motor)
        self.cast(job)

    def stop_all(self) -> None:
        def job():
            for motor in range(self.motor_count):
                self.client.send_stop_stepper_motor(motor)
        self.cast(job)

    def read_angles(self, timeout_s: float) -> list:
        """RA reads for every bound sensor; None entries on per-sensor timeouts."""
        indexes = self.sensor_indexes

        def job():
            deadline = time.monotonic() + timeout_s
            for sensor in indexes:
                self.client.send_get_as5147_position(sensor)
            angles = []
            for sensor in indexes:
                left = max(0.0, deadline - time.monotonic())
                event = self.client.wait_for_event(EventType.AS5147_READ, left,
                                                   param1=sensor)
                angles.append(None if event is None else event.param2)
            return angles

        return self.call(job, timeout=timeout_s + 1.0)


class RoboClawSubsystem(Subsystem):
    def __init__(self, config: SubsystemConfig, sim_speed: float | None = None):
        super().__init__(config)
        self.emulator_config = (
            load_emulator_config(config.config_path) if config.config_path
            else EmulatorConfig(name=config.name)
        )
        self.emulator: RoboClawEmulator | None = None
        self.client: RoboClawClient | None = None
        self._sim_speed = sim_speed
        # host-side dead reckoning for the leg (the boards report no position)
        self._duty_fraction = [0.0, 0.0]
        self._stroke = [0.0, 0.0]
        self._last_integration = time.monotonic()

    def _connect(self) -> None:
        if self.config.endpoint == "inproc":
            self.emulator = RoboClawEmulator(self.emulator_config)
            channel = DuplexChannel()
            self._runner = DeviceRunner(self.emulator, channel, self.emulator_config.dt,
                                        speed=self._sim_speed,
                                        name=f"emulator-{self.config.name}")
            self._runner.start()
            self.client = RoboClawClient(channel.host_endpoint(),
                                         address=self.emulator_config.address)
        else:
            self.client = RoboClawClient.connect(self.config.endpoint,
                                                 address=self.emulator_config.address)

    def _setup(self) -> None:
        self._connect()
        version = self.client.get_firmware_version()
        if not version:
            raise SubsystemUnavailableError(f"{self.name}: no firmware version")

    def _integrate_stroke(self) -> None:
        now = time.monotonic()
        elapsed = now - self._last_integration
        self._last_integration = now
        actuator = self.emulator_config.actuator
        if actuator is None:
            return
        for i in range(2):
            delta = self._duty_fraction[i] * elapsed / actuator.full_travel_s
            self._stroke[i] = min(1.0, max(0.0, self._stroke[i] + delta))

    def set_duty(self, duty1: int, duty2: int, acceleration: int) -> None:
        def job():
            self._integrate_stroke()
            self.client.drive_m1_with_signed_duty_and_acceleration(duty1, acceleration)
            self.client.drive_m2_with_signed_duty_and_acceleration(duty2, acceleration)
            self._duty_fraction[0] = duty1 / 32767.0
            self._duty_fraction[1] = duty2 / 32767.0
        self.cast(job)

    def stop(self) -> None:
        def job():
            self._integrate_stroke()
            self.client.stop_both()
            self._duty_fraction = [0.0, 0.0]
        self.cast(job)

    def read_pwm_percent(self) -> tuple:
        return self.call(self.client.read_motor_pwm, timeout=2.0)

    def read_battery(self) -> float:
        return self.call(self.client.get_main_battery_voltage, timeout=2.0)

    def leg_height_cm(self) -> float | None:
        actuator = self.emulator_config.actuator
        if actuator is None:
            return None

        def job():
            self._integrate_stroke()
            return (actuator.min_height_cm
                    + (actuator.max_height_cm - actuator.min_height_cm) * self._stroke[0])

        return self.call(job, timeout=2.0)


class RobotRig:
    """All five subsystems plus the consolidated snapshot."""

    def __init__(self, config: RigConfig):
        self.config = config
        self.scufy: dict[str, ScufySubsystem] = {}
        self.roboclaw: dict[str, RoboClawSubsystem] = {}
        for name, sub in config.subsystems.items():
            if sub.kind == "scufy":
                self.scufy[name] = ScufySubsystem(sub, config.sim_speed)
            elif sub.kind == "roboclaw":
                self.roboclaw[name] = RoboClawSubsystem(sub, config.sim_speed)
            else:
                raise ValueError(f"unknown subsystem kind {sub.kind!r}")

    def start(self) -> None:
        for subsystem in self.subsystems().values():
            subsystem.start()

    def subsystems(self) -> dict[str, Subsystem]:
        return {**self.scufy, **self.roboclaw}

    def health(self) -> dict[str, dict]:
        return {
            name: {"healthy": sub.healthy, "error": sub.error}
            for name, sub in self.subsystems().items()
        }

    def stop_everything(self) -> list[str]:
        """Stop all motion everywhere; returns subsystems that could not be reached."""
        failures = []
        for name, sub in self.scufy.items():
            try:
                sub.stop_all()
            except SubsystemUnavailableError:
                failures.append(name)
        for name, sub in self.roboclaw.items():
            try:
                sub.stop()
            except SubsystemUnavailableError:
                failures.append(name)
        return failures

    def snapshot(self) -> SnapshotData:
        """One consolidated reading; dead subsystems yield nulls plus an error note."""
        budget = self.config.snapshot_timeout_s
        joints: dict[str, list | None] = {}
        errors: list[str] = []
        futures = {}
        for name, sub in self.scufy.items():
            if not sub.healthy:
                joints[name] = None
                errors.append(sub.error or f"{name} is down")
                continue
            futures[name] = sub

        for name, sub in futures.items():
            try:
                joints[name] = sub.read_angles(budget)
            except SubsystemUnavailableError as exc:
                joints[name] = None
                errors.append(str(exc))

        platform = self.roboclaw.get("platform")
        duty = None
        battery = None
        if platform is not None:
            try:
                pwm1, pwm2 = platform.read_pwm_percent()
                duty = [pwm1, pwm2]
                battery = platform.read_battery()
            except SubsystemUnavailableError as exc:
                errors.append(str(exc))

        leg = self.roboclaw.get("leg")
        leg_height = None
        if leg is not None:
            try:
                leg_height = leg.leg_height_cm()
                if battery is None:
                    battery = leg.read_battery()
            except SubsystemUnavailableError as exc:
                errors.append(str(exc))

        return SnapshotData(
            joints=joints,
            leg_height_cm=leg_height,
            platform_duty_pct=duty,
            battery_v=battery,
            timestamp=time.time(),
            errors=errors,
        )

    def close(self) -> None:
        for subsystem in self.subsystems().values():
            subsystem.close()
