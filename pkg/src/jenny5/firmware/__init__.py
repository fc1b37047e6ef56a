"""Virtual Scufy board: command dispatch, motion integration, transports."""

from jenny5.firmware.board import VirtualBoard
from jenny5.firmware.config import BoardConfig, load_board_config
from jenny5.firmware.motion import JointBinding, MotorState, ServoSim, StepperMotorSim
from jenny5.firmware.runner import BoardRunner
from jenny5.firmware.transport import DuplexChannel, TcpBoardServer

__all__ = [
    "BoardConfig",
    "BoardRunner",
    "DuplexChannel",
    "JointBinding",
    "MotorState",
    "ServoSim",
    "StepperMotorSim",
    "TcpBoardServer",
    "VirtualBoard",
    "load_board_config",
]
