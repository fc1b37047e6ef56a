"""WebSocket teleoperation service over the simulated (or real) robot."""

from jenny5.teleop.messages import (
    BehaviorStart,
    BehaviorStatus,
    BehaviorStop,
    ErrorMessage,
    MessageError,
    Select,
    SnapshotRequest,
    SyntheticDetection,
    TextCommand,
    Tilt,
    parse_client_message,
    server_message_to_dict,
)
from jenny5.teleop.rig import RigConfig, RobotRig, load_rig_config

__all__ = [
    "BehaviorStart",
    "BehaviorStatus",
    "BehaviorStop",
    "ErrorMessage",
    "MessageError",
    "RigConfig",
    "RobotRig",
    "Select",
    "SnapshotRequest",
    "SyntheticDetection",
    "TextCommand",
    "Tilt",
    "load_rig_config",
    "parse_client_message",
    "server_message_to_dict",
]
