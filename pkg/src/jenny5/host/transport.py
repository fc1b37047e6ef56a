"""Byte transports for the host client.

All transports share one duck-typed surface: ``write(bytes)``,
``read_available() -> bytes`` (non-blocking), ``close()`` and ``is_open``.
The in-process board channel (``jenny5.firmware.transport.HostEndpoint``)
implements the same surface, so tests and embedded rigs plug in directly.
"""

from __future__ import annotations

import os
import select
import socket


class ConnectFailedError(ConnectionError):
    pass


class TransportClosedError(ConnectionError):
    pass


class TcpTransport:
    """Raw byte stream to a TCP endpoint (the firmware sim, usually)."""

    def __init__(self, host: str, port: int, connect_timeout: float = 3.0):
        try:
            self._sock = socket.create_connection((host, port), timeout=connect_timeout)
        except OSError as exc:
            raise ConnectFailedError(f"cannot connect to {host}:{port}: {exc}") from exc
        self._sock.setblocking(False)
        self._open = True

    def write(self, data: bytes) -> None:
        if not self._open:
            raise TransportClosedError("transport closed")
        view = memoryview(data)
        while view:
            _, writable, _ = select.select([], [self._sock], [], 1.0)
            if not writable:
                continue
            try:
                sent = self._sock.send(view)
            except OSError as exc:
                self.close()
                raise TransportClosedError(str(exc)) from exc
            view = view[sent:]

    def read_available(self) -> bytes:
        if not self._open:
            raise TransportClosedError("transport closed")
        chunks = []
        while True:
            try:
                data = self._sock.recv(4096)
            except (BlockingIOError, InterruptedError):
                break
            except OSError as exc:
                self.close()
                raise TransportClosedError(str(exc)) from exc
            if data == b"":
                self.close()
                if chunks:
                    break
                raise TransportClosedError("peer closed the connection")
            chunks.append(data)
        return b"".join(chunks)

    def close(self) -> None:
        if self._open:
            self._open = False
            try:
                self._sock.close()
            except OSError:
                pass

    @property
    def is_open(self) -> bool:
        return self._open


class SerialTransport:
    """Real serial port, for running against actual hardware (pyserial extra)."""

    def __init__(self, path: str, baud: int = 115200):
        try:
            import serial  # optional dependency: pip install jenny5[serial]
        except ImportError as exc:  # pragma: no cover - environment dependent
            raise ConnectFailedError(
                "pyserial is not installed; install the 'serial' extra"
            ) from exc
        try:
            self._port = serial.Serial(path, baud, timeout=0)
        except Exception as exc:  # pragma: no cover - hardware dependent
            raise ConnectFailedError(f"cannot open {path}: {exc}") from exc
        self._open = True

    def write(self, data: bytes) -> None:  # pragma: no cover - hardware dependent
        if not self._open:
            raise TransportClosedError("transport closed")
        self._port.write(data)

    def read_available(self) -> bytes:  # pragma: no cover - hardware dependent
        if not self._open:
            raise TransportClosedError("transport closed")
        waiting = self._port.in_waiting
        return self._port.read(waiting) if waiting else b""

    def close(self) -> None:  # pragma: no cover - hardware dependent
        self._open = False
        self._port.close()

    @property
    def is_open(self) -> bool:  # pragma: no cover - hardware dependent
        return self._open


def open_transport(endpoint: str, baud: int = 115200, connect_timeout: float = 3.0):
    """'host:port' opens TCP; anything else is treated as a serial device path."""
    if ":" in endpoint and not endpoint.startswith("/") and "\\" not in endpoint:
        host, _, port = endpoint.rpartition(":")
        try:
            port_no = int(port)
        except ValueError as exc:
            raise ConnectFailedError(f"bad endpoint {endpoint!r}") from exc
        return TcpTransport(host or "127.0.0.1", port_no, connect_timeout)
    return SerialTransport(endpoint, baud)


def default_endpoint(fallback: str = "127.0.0.1:7501") -> str:
    """Endpoint for examples/tests; SCUFY_ENDPOINT overrides the fallback."""
    return os.environ.get("SCUFY_ENDPOINT", fallback)
