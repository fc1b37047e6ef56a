"""Drivetrain arithmetic and named physical constants of the Jenny 5 robot.

Torque chain: motor holding torque x gearbox ratio x gearbox efficiency x
external pulley reduction. Speeds divide by the same ratios. Ratios are kept
as exact rationals; rounding happens only at display time.

The speed/sweep figures use the constant-speed approximation (acceleration
ramps ignored); the firmware simulator's trapezoidal profile will run a touch
longer, which the tests acknowledge.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

GRAVITY_M_S2 = 9.81
ARM_LENGTH_CM = 70.0
AS5147_DEFAULT_COUNTS_PER_REV = 360  # 1 sensor unit == 1 degree of joint angle

Ratio = Fraction | int | float | str


def _frac(value: Ratio) -> Fraction:
    """Exact rational from int/str ('47/14', '1.8') or float (via repr)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


@dataclass(frozen=True)
class DrivetrainSpec:
    """One stepper-driven joint: motor, gearbox and external pulley stage."""

    motor_holding_torque_ncm: float
    gearbox_ratio: Fraction
    gearbox_efficiency: float
    external_reduction: Fraction
    step_angle_deg: Fraction = Fraction(9, 5)  # 1.8 degrees
    max_step_rate: float = 1500.0
    gearbox_torque_limit_ncm: float = 600.0

    def __post_init__(self):
        object.__setattr__(self, "gearbox_ratio", _frac(self.gearbox_ratio))
        object.__setattr__(self, "external_reduction", _frac(self.external_reduction))
        object.__setattr__(self, "step_angle_deg", _frac(self.step_angle_deg))
        for name in ("motor_holding_torque_ncm", "gearbox_ratio", "gearbox_efficiency",
                     "external_reduction", "step_angle_deg", "max_step_rate",
                     "gearbox_torque_limit_ncm"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.gearbox_efficiency > 1:
            raise ValueError("gearbox_efficiency must be in (0, 1]")


@dataclass(frozen=True)
class JointSpec:
    drivetrain: DrivetrainSpec
    arm_radius_cm: float = ARM_LENGTH_CM
    sensor_counts_per_rev: int = AS5147_DEFAULT_COUNTS_PER_REV


@dataclass(frozen=True)
class LinearActuatorSpec:
    """Leg linear motor: force, stroke and the resulting height envelope."""

    force_n: float = 750.0
    stroke_mm: float = 100.0
    full_travel_s: float = 7.0
    min_height_cm: float = 35.0
    max_height_cm: float = 95.0


@dataclass(frozen=True)
class PlatformSpec:
    top_speed_kmh: float = 3.0  # upper bound, gear-reduction limited
    motor_count: int = 2


def gearbox_output_torque(spec: DrivetrainSpec) -> float:
    """Torque after the gearbox (efficiency applied), before the pulley stage."""
    return spec.motor_holding_torque_ncm * float(spec.gearbox_ratio) * spec.gearbox_efficiency


def output_torque(spec: DrivetrainSpec) -> float:
    """Joint torque in N*cm after gearbox and external reduction."""
    return gearbox_output_torque(spec) * float(spec.external_reduction)


def payload_at_radius(torque_ncm: float, radius_cm: float) -> tuple[float, float]:
    """(force N, mass-equivalent kg) a torque can hold at a lever radius."""
    if radius_cm <= 0:
        raise ValueError("radius must be strictly positive")
    force_n = torque_ncm / radius_cm
    return force_n, force_n / GRAVITY_M_S2


def practical_output_torque(spec: DrivetrainSpec) -> float:
    """Joint torque bounded by the gearbox damage limit instead of the motor."""
    return spec.gearbox_torque_limit_ncm * float(spec.external_reduction)


def motor_rev_per_s(spec: DrivetrainSpec) -> Fraction:
    return _frac(spec.max_step_rate) * spec.step_angle_deg / 360


def joint_rev_per_s(spec: DrivetrainSpec) -> Fraction:
    return motor_rev_per_s(spec) / spec.gearbox_ratio / spec.external_reduction


def joint_speed_deg_s(spec: DrivetrainSpec) -> float:
    return float(joint_rev_per_s(spec) * 360)


def sweep_time_s(spec: DrivetrainSpec, degrees: float) -> float:
    """Seconds to sweep the joint through `degrees` at full commanded rate."""
    return degrees / joint_speed_deg_s(spec)


def binding_units_per_step(spec: DrivetrainSpec,
                           counts_per_rev: int = AS5147_DEFAULT_COUNTS_PER_REV) -> Fraction:
    """Sensor counts the joint sensor advances per single motor step."""
    return counts_per_rev * spec.step_angle_deg / 360 / spec.gearbox_ratio / spec.external_reduction


def steps_per_joint_degree(spec: DrivetrainSpec) -> Fraction:
    return 1 / (binding_units_per_step(spec, 360))


def leg_extension(t_s: float, direction: int = 1, start_fraction: float = 0.0,
                  spec: LinearActuatorSpec = LinearActuatorSpec()) -> tuple[float, float]:
    """(fraction 0..1, height cm) of the leg after `t_s` seconds of travel.

    Linear ramp over the full-travel time; direction +1 extends, -1 compresses.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    fraction = start_fraction + direction * (t_s / spec.full_travel_s)
    fraction = min(1.0, max(0.0, fraction))
    height = spec.min_height_cm + (spec.max_height_cm - spec.min_height_cm) * fraction
    return fraction, height


# --- named presets -----------------------------------------------------------

#: Shoulder/elbow joints: 50:1 planetary gearbox plus the 47:14 belt stage.
ARM_LIFT_JOINT = DrivetrainSpec(
    motor_holding_torque_ncm=52.0,
    gearbox_ratio=Fraction(50),
    gearbox_efficiency=0.73,
    external_reduction=Fraction(47, 14),
)

#: Remaining arm joints use the lighter 27:1 gearboxes.
ARM_LIGHT_JOINT = DrivetrainSpec(
    motor_holding_torque_ncm=52.0,
    gearbox_ratio=Fraction(27),
    gearbox_efficiency=0.73,
    external_reduction=Fraction(47, 14),
)

#: Head pan/tilt: small steppers, gearbox only, no belt stage.
HEAD_JOINT = DrivetrainSpec(
    motor_holding_torque_ncm=12.0,
    gearbox_ratio=Fraction(27),
    gearbox_efficiency=0.73,
    external_reduction=Fraction(1),
    max_step_rate=1500.0,
    gearbox_torque_limit_ncm=150.0,
)

LEG_ACTUATOR = LinearActuatorSpec()
PLATFORM = PlatformSpec()

PRESETS: dict[str, DrivetrainSpec] = {
    "arm-lift": ARM_LIFT_JOINT,
    "arm-light": ARM_LIGHT_JOINT,
    "head": HEAD_JOINT,
}


def drivetrain_from_dict(data: dict) -> DrivetrainSpec:
    """Build a spec from the JSON config family (ratios may be '47/14' strings)."""
    return DrivetrainSpec(
        motor_holding_torque_ncm=float(data["motor_holding_torque_ncm"]),
        gearbox_ratio=_frac(data["gearbox_ratio"]),
        gearbox_efficiency=float(data["gearbox_efficiency"]),
        external_reduction=_frac(data["external_reduction"]),
        step_angle_deg=_frac(data.get("step_angle_deg", "1.8")),
        max_step_rate=float(data.get("max_step_rate", 1500)),
        gearbox_torque_limit_ncm=float(data.get("gearbox_torque_limit_ncm", 600)),
    )


def load_drivetrain(path: str | Path) -> DrivetrainSpec:
    with open(path, encoding="utf-8") as fh:
        return drivetrain_from_dict(json.load(fh))
