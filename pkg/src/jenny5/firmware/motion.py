"""Simulated actuators: trapezoidal-profile steppers and instant servos.

The stepper integrator follows the continuous-time trapezoidal/triangular
velocity profile exactly: each tick is split at phase boundaries (accelerate,
cruise, final deceleration) and integrated in closed form, so total move
times match the analytic profile to floating-point precision and moves land
exactly on their target.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from jenny5.scufy.wire import SensorAttachSpec

POS_EPS = 1e-6  # steps
VEL_EPS = 1e-6  # steps/s
SNAP_DIST = 0.5  # steps; sub-step remainders are below physical resolution
SNAP_TIME = 1e-5  # s; residual micro-brake shorter than this completes the move

DEFAULT_SPEED = 500.0
DEFAULT_ACCELERATION = 1000.0


class MotorState(Enum):
    DISABLED = "disabled"
    LOCKED = "locked"
    MOVING = "moving"


@dataclass
class StepperMotorSim:
    dir_pin: int
    step_pin: int
    enable_pin: int
    position: float = 0.0  # steps, signed
    target: int = 0
    velocity: float = 0.0  # steps/s, signed; |velocity| <= max_speed always
    max_speed: float = DEFAULT_SPEED
    acceleration: float = DEFAULT_ACCELERATION
    state: MotorState = MotorState.DISABLED
    attached: tuple[SensorAttachSpec, ...] = ()

    @property
    def distance_to_go(self) -> int:
        return round(abs(self.target - self.position))

    def start_move(self, target: int) -> bool:
        """Aim at a new absolute step target. Returns True if already there."""
        self.target = int(target)
        if abs(self.target - self.position) <= POS_EPS and abs(self.velocity) <= VEL_EPS:
            self.position = float(self.target)
            self.velocity = 0.0
            self.state = MotorState.LOCKED
            return True
        self.state = MotorState.MOVING
        return False

    def halt(self, state: MotorState = MotorState.LOCKED) -> None:
        """Immediate stop at the current position (stop/lock/disable semantics)."""
        self.target = round(self.position)
        self.velocity = 0.0
        self.state = state

    def advance(self, dt: float) -> bool:
        """Integrate dt seconds of motion; True iff the target was reached."""
        if self.state is not MotorState.MOVING:
            return False
        remaining = dt
        for _ in range(64):
            d = self.target - self.position
            v = self.velocity
            if abs(d) <= POS_EPS and abs(v) <= VEL_EPS:
                self._arrive()
                return True
            if self.acceleration > 0 and abs(d) <= SNAP_DIST \
                    and abs(v) / self.acceleration <= SNAP_TIME:
                self._arrive()
                return True
            if remaining <= 0:
                return False
            if self.max_speed <= 0:
                return False  # unreachable target; motor cannot step
            if self.acceleration <= 0:
                if self._advance_constant_speed(remaining):
                    return True
                return False
            remaining = self._advance_phase(remaining)
        return False

    # -- internals ---------------------------------------------------------

    def _arrive(self) -> None:
        self.position = float(self.target)
        self.velocity = 0.0
        self.state = MotorState.LOCKED  # motor remains locked after a move

    def _advance_constant_speed(self, remaining: float) -> bool:
        # acceleration == 0 is treated as an instantaneous ramp to max_speed
        d = self.target - self.position
        s = 1.0 if d > 0 else -1.0
        t_hit = abs(d) / self.max_speed
        if t_hit <= remaining:
            self._arrive()
            return True
        self.position += s * self.max_speed * remaining
        self.velocity = s * self.max_speed
        return False

    def _advance_phase(self, remaining: float) -> float:
        """Integrate one profile phase (or the rest of the tick); returns time left."""
        a = self.acceleration
        vmax = self.max_speed
        d = self.target - self.position
        v = self.velocity
        if d > POS_EPS:
            s = 1.0
        elif d < -POS_EPS:
            s = -1.0
        else:
            s = -1.0 if v > 0 else 1.0  # sitting on target with residual speed
        vt = v * s  # speed toward the target
        dd = abs(d)

        if vt < -VEL_EPS:
            # moving away from the target: brake to rest first
            t_phase = -vt / a
            accel = s * a
        else:
            vt = max(vt, 0.0)
            d_stop = vt * vt / (2.0 * a)
            if d_stop >= dd - POS_EPS:
                # final deceleration; lands on the target when d_stop == dd,
                # overshoots and re-plans when a retarget left us too fast
                t_phase = vt / a
                accel = -s * a
            elif vt > vmax + VEL_EPS:
                # over the (possibly newly lowered) cap: brake down to it
                t_phase = (vt - vmax) / a
                accel = -s * a
            elif vt >= vmax - VEL_EPS:
                # cruise until the braking point
                t_phase = (dd - vmax * vmax / (2.0 * a)) / vmax
                accel = 0.0
            else:
                # accelerate until vmax or until the switch point, whichever first
                x_switch = (dd - d_stop) / 2.0
                t_switch = (-vt + (vt * vt + 2.0 * a * x_switch) ** 0.5) / a
                t_vmax = (vmax - vt) / a
                t_phase = min(t_switch, t_vmax)
                accel = s * a

        if t_phase <= 0:
            # numerically at a phase boundary: fall through to final deceleration
            t_phase = max(vt, VEL_EPS) / a
            accel = -s * a

        tau = min(t_phase, remaining)
        self.position += v * tau + 0.5 * accel * tau * tau
        self.velocity = v + accel * tau
        if abs(self.velocity) > vmax:
            self.velocity = vmax if self.velocity > 0 else -vmax
        return remaining - tau


@dataclass
class ServoSim:
    """Hobby servo: position clamped to 0..180, motion below tick resolution."""

    pin: int
    position: int = 90
    home: int = 90

    def move_to(self, request: int) -> int:
        """Apply a position request; returns 0 when honored, 1 when clamped."""
        clamped = min(180, max(0, request))
        self.position = clamped
        return 0 if clamped == request else 1


@dataclass
class AS5147Sim:
    """Magnetic rotary sensor; live readings derive from a joint binding."""

    pin: int
    default_reading: float = 0.0


@dataclass(frozen=True)
class JointBinding:
    """Fixed transmission between a motor's step count and a sensor reading.

    reading == sensor_offset + direction * units_per_step * position, always.
    """

    motor_index: int
    sensor_index: int
    units_per_step: float
    sensor_offset: float
    direction: int = 1

    def __post_init__(self):
        if self.direction not in (1, -1):
            raise ValueError("binding direction must be +1 or -1")
        if self.units_per_step <= 0:
            raise ValueError("units_per_step must be strictly positive")

    def reading(self, position_steps: float) -> float:
        return self.sensor_offset + self.direction * self.units_per_step * position_steps

    def steps_for_reading(self, value: float) -> float:
        return (value - self.sensor_offset) / (self.direction * self.units_per_step)
