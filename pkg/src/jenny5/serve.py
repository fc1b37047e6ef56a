"""Generic byte-device plumbing shared by the firmware sim and board emulators.

A *byte device* is any single-owner object exposing ``feed(data) -> bytes``
(consume inbound bytes, return anything due immediately) and
``tick(dt) -> bytes`` (advance simulated time, return emitted bytes). The
runner/server below are the only things allowed to touch a device, so the
device itself never needs locks.
"""

from __future__ import annotations

import select
import socket
import threading
import time
from typing import Protocol


class ByteDevice(Protocol):
    def feed(self, data: bytes) -> bytes: ...

    def tick(self, dt: float) -> bytes: ...


class ByteChannel:
    """One-directional, thread-safe byte FIFO."""

    def __init__(self):
        self._buf = bytearray()
        self._lock = threading.Lock()
        self._closed = False

    def write(self, data: bytes) -> None:
        with self._lock:
            if self._closed:
                raise ConnectionError("channel closed")
            self._buf.extend(data)

    def read_available(self) -> bytes:
        with self._lock:
            if not self._buf:
                if self._closed:
                    raise ConnectionError("channel closed")
                return b""
            data = bytes(self._buf)
            self._buf.clear()
            return data

    def close(self) -> None:
        with self._lock:
            self._closed = True

    @property
    def closed(self) -> bool:
        return self._closed


class HostEndpoint:
    """Host-facing half of a duplex channel; quacks like a client transport."""

    def __init__(self, to_device: ByteChannel, to_host: ByteChannel):
        self._to_device = to_device
        self._to_host = to_host
        self._open = True

    def write(self, data: bytes) -> None:
        if not self._open:
            raise ConnectionError("transport closed")
        self._to_device.write(data)

    def read_available(self) -> bytes:
        if not self._open:
            raise ConnectionError("transport closed")
        return self._to_host.read_available()

    def close(self) -> None:
        self._open = False

    @property
    def is_open(self) -> bool:
        return self._open


class DuplexChannel:
    """In-process serial-port stand-in between a host client and a device."""

    def __init__(self):
        self.to_device = ByteChannel()
        self.to_host = ByteChannel()

    def host_endpoint(self) -> HostEndpoint:
        return HostEndpoint(self.to_device, self.to_host)


class DeviceRunner(threading.Thread):
    """Owns a device on an in-process channel: pull, feed, tick, push.

    ``speed`` is the real-time multiplier; ``None`` free-runs every loop
    iteration (simulated seconds then cost microseconds, handy for tests).
    """

    def __init__(self, device: ByteDevice, channel: DuplexChannel, dt: float,
                 speed: float | None = None, name: str = "device-runner"):
        super().__init__(daemon=True, name=name)
        self.device = device
        self.channel = channel
        self.dt = dt
        self.speed = speed
        self._stop_event = threading.Event()

    def stop(self) -> None:
        self._stop_event.set()

    def run(self) -> None:
        tick_wall = (self.dt / self.speed) if self.speed else 0.0
        while not self._stop_event.is_set():
            started = time.monotonic()
            try:
                data = self.channel.to_device.read_available()
            except ConnectionError:
                break
            out = bytearray()
            if data:
                out.extend(self.device.feed(data))
            out.extend(self.device.tick(self.dt))
            if out:
                try:
                    self.channel.to_host.write(bytes(out))
                except ConnectionError:
                    break
            if tick_wall:
                leftover = tick_wall - (time.monotonic() - started)
                if leftover > 0:
                    self._stop_event.wait(leftover)
            else:
                time.sleep(0)  # free-run: yield the GIL between ticks


class TcpDeviceServer(threading.Thread):
    """Serves one device over TCP, one client at a time, ticking on schedule.

    The device keeps ticking while no client is connected (the simulated
    hardware exists independently of the host).
    """

    def __init__(self, device: ByteDevice, host: str, port: int, dt: float,
                 speed: float | None = 1.0, name: str = "device-server"):
        super().__init__(daemon=True, name=name)
        self.device = device
        self.dt = dt
        self.speed = speed
        self._listen = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        self._listen.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        self._listen.bind((host, port))
        self._listen.listen(1)
        self._listen.setblocking(False)
        self._stop_event = threading.Event()

    @property
    def address(self) -> tuple[str, int]:
        return self._listen.getsockname()[:2]

    @property
    def port(self) -> int:
        return self.address[1]

    def stop(self) -> None:
        self._stop_event.set()

    def on_client_connected(self) -> None:
        """Hook for subclasses (e.g. reset per-connection parser state)."""

    def run(self) -> None:
        conn: socket.socket | None = None
        outbuf = bytearray()
        tick_wall = (self.dt / self.speed) if self.speed else 0.0
        next_tick = time.monotonic()
        try:
            while not self._stop_event.is_set():
                waitable = [conn if conn is not None else self._listen]
                timeout = max(0.0, next_tick - time.monotonic()) if tick_wall else 0.0
                readable, _, _ = select.select(waitable, [], [], min(timeout, 0.05))
                if readable:
                    if conn is None:
                        try:
                            conn, _ = self._listen.accept()
                            conn.setblocking(False)
                            self.on_client_connected()
                        except OSError:
                            pass
                    else:
                        try:
                            data = conn.recv(4096)
                        except (BlockingIOError, InterruptedError):
                            data = None
                        except OSError:
                            data = b""
                        if data == b"":
                            conn.close()
                            conn = None
                        elif data:
                            outbuf.extend(self.device.feed(data))
                now = time.monotonic()
                if tick_wall:
                    ticks = 0
                    while now >= next_tick and ticks < 1000:
                        outbuf.extend(self.device.tick(self.dt))
                        next_tick += tick_wall
                        ticks += 1
                    if ticks >= 1000:  # fell too far behind; drop the backlog
                        next_tick = now + tick_wall
                else:
                    outbuf.extend(self.device.tick(self.dt))
                if conn is not None and outbuf:
                    try:
                        conn.sendall(outbuf)
                        outbuf.clear()
                    except OSError:
                        conn.close()
                        conn = None
                        outbuf.clear()
        finally:
            if conn is not None:
                conn.close()
            self._listen.close()
