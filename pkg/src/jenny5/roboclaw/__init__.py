"""Motor-board stack: packetized client plus an emulated dual-channel board."""

from jenny5.roboclaw.client import (
    DEFAULT_PORT,
    LIBRARY_VERSION,
    RoboClawClient,
    RoboClawTimeoutError,
)
from jenny5.roboclaw.emulator import (
    ChannelSim,
    EmulatorConfig,
    RoboClawEmulator,
    load_emulator_config,
)
from jenny5.roboclaw.packets import ACK, CrcError, Opcode, PacketError, crc16_ccitt

__all__ = [
    "ACK",
    "ChannelSim",
    "CrcError",
    "DEFAULT_PORT",
    "EmulatorConfig",
    "LIBRARY_VERSION",
    "Opcode",
    "PacketError",
    "RoboClawClient",
    "RoboClawEmulator",
    "RoboClawTimeoutError",
    "crc16_ccitt",
    "load_emulator_config",
]
