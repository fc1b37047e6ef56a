"""Teleop behaviors: face centering and person following.

Vision is out of scope; behaviors consume synthetic detections (normalized
face offset and apparent size) and reduce them to motor commands through two
small control laws, kept as pure functions so they are testable in isolation.
"""

from __future__ import annotations

from jenny5.teleop.messages import BehaviorStatus, SyntheticDetection
from jenny5.teleop.rig import BehaviorParams, RigGains, RobotRig, SubsystemUnavailableError


def center_head_step(offset_x: float, offset_y: float, kp: float,
                     deadband: float) -> tuple[int, int] | None:
    """Proportional correction in motor steps, or None inside the deadband.

    Positive offset means the face sits right/up of center, so the motors
    step the opposite way.
    """
    pan = -round(kp * offset_x) if abs(offset_x) >= deadband else 0
    tilt = -round(kp * offset_y) if abs(offset_y) >= deadband else 0
    if pan == 0 and tilt == 0:
        return None
    return pan, tilt


def follow_person_step(apparent_size: float, size_low: float, size_high: float) -> str:
    """Hysteresis on apparent size: 'backward' | 'forward' | 'stop'."""
    if apparent_size > size_high:
        return "backward"  # person too close
    if apparent_size < size_low:
        return "forward"
    return "stop"


class BehaviorEngine:
    """Per-session behavior runner; issues commands through the rig writers."""

    def __init__(self, rig: RobotRig, params: BehaviorParams, gains: RigGains,
                 limiter: "RateLimiter"):
        self.rig = rig
        self.params = params
        self.gains = gains
        self.limiter = limiter
        self.active: str | None = None

    def start(self, name: str) -> BehaviorStatus:
        if name == "center_head":
            head = self.rig.scufy.get("head")
            if head is None or not head.healthy:
                return BehaviorStatus(name, "failed")
        else:
            platform = self.rig.roboclaw.get("platform")
            if platform is None or not platform.healthy:
                return BehaviorStatus(name, "failed")
        self.active = name
        return BehaviorStatus(name, "running")

    def stop(self) -> BehaviorStatus | None:
        if self.active is None:
            return None
        name, self.active = self.active, None
        if name == "follow_person":
            platform = self.rig.roboclaw.get("platform")
            if platform is not None and platform.healthy:
                try:
                    platform.stop()
                except SubsystemUnavailableError:
                    pass
        return BehaviorStatus(name, "stopped")

    def on_detection(self, det: SyntheticDetection) -> BehaviorStatus | None:
        """Feed one detection to the active behavior; status only on failure."""
        if self.active == "center_head":
            return self._center_head(det)
        if self.active == "follow_person":
            return self._follow_person(det)
        return None

    def _center_head(self, det: SyntheticDetection) -> BehaviorStatus | None:
        head = self.rig.scufy.get("head")
        if head is None or not head.healthy:
            self.active = None
            return BehaviorStatus("center_head", "failed")
        correction = center_head_step(det.offset_x, det.offset_y,
                                      self.params.kp_steps, self.params.deadband)
        if correction is None:
            return None
        pan, tilt = correction
        try:
            if pan and tilt:
                if self.limiter.allow("head", 0) and self.limiter.allow("head", 1):
                    head.move_pair(0, pan, 1, tilt)
            elif pan:
                if self.limiter.allow("head", 0):
                    head.move_motor(0, pan)
            elif tilt:
                if self.limiter.allow("head", 1):
                    head.move_motor(1, tilt)
        except SubsystemUnavailableError:
            self.active = None
            return BehaviorStatus("center_head", "failed")
        return None

    def _follow_person(self, det: SyntheticDetection) -> BehaviorStatus | None:
        platform = self.rig.roboclaw.get("platform")
        if platform is None or not platform.healthy:
            self.active = None
            return BehaviorStatus("follow_person", "failed")
        action = follow_person_step(det.apparent_size,
                                    self.params.follow_size_low,
                                    self.params.follow_size_high)
        duty = {"forward": self.params.follow_duty,
                "backward": -self.params.follow_duty,
                "stop": 0}[action]
        try:
            if self.limiter.allow("platform", 0) and self.limiter.allow("platform", 1):
                platform.set_duty(duty, duty, self.gains.duty_acceleration)
        except SubsystemUnavailableError:
            self.active = None
            return BehaviorStatus("follow_person", "failed")
        return None


class RateLimiter:
    """At most one motion command per (group, motor) per interval."""

    def __init__(self, interval_s: float, clock=None):
        import time as _time

        self.interval_s = interval_s
        self._clock = clock or _time.monotonic
        self._last: dict[tuple[str, int], float] = {}

    def allow(self, group: str, motor: int) -> bool:
        now = self._clock()
        key = (group, motor)
        last = self._last.get(key)
        if last is not None and now - last < self.interval_s:
            return False
        self._last[key] = now
        return True
