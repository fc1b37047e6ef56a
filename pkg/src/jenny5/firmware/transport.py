"""Transport adapters for the virtual board.

Two bindings exist: an in-process duplex byte channel (tests, embedded rigs)
and a TCP listener speaking raw Scufy bytes, one client at a time, so a host
client can connect exactly as it would to a serial port.

The board is single-owner; the adapters exchange nothing but bytes with it.
"""

from __future__ import annotations

from jenny5.firmware.board import VirtualBoard
from jenny5.scufy import BufferOverflowError, FrameDecoder
from jenny5.serve import ByteChannel, DuplexChannel, HostEndpoint, TcpDeviceServer

DEFAULT_PORT = 7501

__all__ = [
    "ByteChannel",
    "DEFAULT_PORT",
    "DuplexChannel",
    "HostEndpoint",
    "ScufyByteDevice",
    "TcpBoardServer",
]


class ScufyByteDevice:
    """Byte-device adapter: splits the inbound stream into frames for the board."""

    def __init__(self, board: VirtualBoard):
        self.board = board
        self._decoder = FrameDecoder()

    def reset_stream(self) -> None:
        self._decoder = FrameDecoder()

    def feed(self, data: bytes) -> bytes:
        try:
            frames = self._decoder.feed(data)
        except BufferOverflowError as exc:
            frames = exc.frames
            for frame in frames:
                self.board.submit(frame)
            return b"E#"  # an oversized frame is a rejected command
        for frame in frames:
            self.board.submit(frame)
        return b""

    def tick(self, dt: float) -> bytes:
        return b"".join(self.board.tick(dt))


class TcpBoardServer(TcpDeviceServer):
    """Serves one virtual board over TCP (raw Scufy bytes, one client at a time)."""

    def __init__(self, board: VirtualBoard, host: str = "127.0.0.1",
                 port: int = DEFAULT_PORT, dt: float | None = None,
                 speed: float | None = 1.0):
        self.board = board
        self._adapter = ScufyByteDevice(board)
        super().__init__(self._adapter, host, port,
                         dt if dt is not None else board.config.dt,
                         speed, name="scufy-tcp-server")

    def on_client_connected(self) -> None:
        self._adapter.reset_stream()
