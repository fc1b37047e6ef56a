"""Background ticker connecting a board to an in-process duplex channel."""

from __future__ import annotations

from jenny5.firmware.board import VirtualBoard
from jenny5.firmware.transport import ScufyByteDevice
from jenny5.serve import DeviceRunner, DuplexChannel


class BoardRunner(DeviceRunner):
    """Owns the board: pulls inbound bytes, ticks, pushes responses."""

    def __init__(self, board: VirtualBoard, channel: DuplexChannel,
                 dt: float | None = None, speed: float | None = None):
        self.board = board
        super().__init__(ScufyByteDevice(board), channel,
                         dt if dt is not None else board.config.dt,
                         speed, name=f"board-runner-{board.config.name}")
