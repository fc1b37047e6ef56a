"""Client for the dual-channel motor boards (platform and leg).

Function surface mirrors the documented control library, with out-parameters
turned into return values. All unit conversions happen here: temperature and
battery arrive in tenths, currents in 10 mA units (divide by 100 for amps),
PWM readings divide by 327.67 for percent, current limits multiply amps by
100 for the wire.
"""

from __future__ import annotations

import struct
import time

from jenny5.host.transport import TransportClosedError, open_transport
from jenny5.roboclaw import packets
from jenny5.roboclaw.packets import Opcode

LIBRARY_VERSION = "jenny5-roboclaw 1.0"
DEFAULT_PORT = 7502


class RoboClawTimeoutError(TimeoutError):
    pass


class RoboClawClient:
    def __init__(self, transport, address: int = packets.DEFAULT_ADDRESS,
                 response_timeout: float = 1.0):
        self._transport = transport
        self.address = address
        self.response_timeout = response_timeout
        self._rxbuf = bytearray()

    @classmethod
    def connect(cls, endpoint: str, address: int = packets.DEFAULT_ADDRESS,
                baud: int = 115200, connect_timeout: float = 3.0) -> "RoboClawClient":
        return cls(open_transport(endpoint, baud, connect_timeout), address)

    @staticmethod
    def get_library_version() -> str:
        return LIBRARY_VERSION

    def is_open(self) -> bool:
        return bool(getattr(self._transport, "is_open", False))

    def close_connection(self) -> None:
        self._transport.close()

    close = close_connection

    # -- transaction plumbing --------------------------------------------------

    def _send(self, opcode: int, payload: bytes = b"") -> None:
        try:
            self._transport.write(packets.build_request(self.address, opcode, payload))
        except ConnectionError as exc:
            raise TransportClosedError(str(exc)) from exc

    def _read_exact(self, n: int) -> bytes:
        deadline = time.monotonic() + self.response_timeout
        while len(self._rxbuf) < n:
            try:
                data = self._transport.read_available()
            except ConnectionError as exc:
                raise TransportClosedError(str(exc)) from exc
            if data:
                self._rxbuf.extend(data)
                continue
            if time.monotonic() >= deadline:
                raise RoboClawTimeoutError(f"timed out waiting for {n} response bytes")
            time.sleep(0.001)
        out = bytes(self._rxbuf[:n])
        del self._rxbuf[:n]
        return out

    def _write_command(self, opcode: int, payload: bytes = b"") -> bool:
        self._send(opcode, payload)
        return self._read_exact(1)[0] == packets.ACK

    def _read_command(self, opcode: int, payload_len: int) -> bytes:
        self._send(opcode)
        data = self._read_exact(payload_len + 2)
        payload, (crc,) = data[:-2], struct.unpack(">H", data[-2:])
        packets.verify_read_response(self.address, opcode, payload, crc)
        return payload

    # -- telemetry ---------------------------------------------------------------

    def get_board_temperature(self) -> float:
        """Board temperature in degrees C (wire value is in tenths)."""
        (raw,) = struct.unpack(">H", self._read_command(Opcode.GET_TEMPERATURE, 2))
        return raw / 10.0

    def get_main_battery_voltage(self) -> float:
        """Main battery voltage in volts (wire value is in tenths)."""
        (raw,) = struct.unpack(">H", self._read_command(Opcode.GET_MAIN_BATTERY, 2))
        return raw / 10.0

    def get_firmware_version(self) -> str:
        """Version text, up to 48 bytes, terminated by line feed and NUL."""
        self._send(Opcode.GET_FIRMWARE_VERSION)
        deadline = time.monotonic() + self.response_timeout
        body = bytearray()
        while True:
            body.extend(self._read_exact(1))
            if body.endswith(b"\x00"):
                break
            if len(body) > packets.VERSION_MAX_BYTES:
                raise packets.PacketError("version response exceeds 48 bytes")
            if time.monotonic() >= deadline:
                raise RoboClawTimeoutError("timed out reading firmware version")
        (crc,) = struct.unpack(">H", self._read_exact(2))
        packets.verify_read_response(self.address, Opcode.GET_FIRMWARE_VERSION, bytes(body), crc)
        return body.decode("ascii")

    def get_motors_current_consumption(self) -> tuple[float, float]:
        """(M1 amps, M2 amps); wire values are 10 mA increments."""
        raw1, raw2 = struct.unpack(">HH", self._read_command(Opcode.GET_CURRENTS, 4))
        return raw1 / 100.0, raw2 / 100.0

    def read_motor_pwm(self) -> tuple[float, float]:
        """(M1, M2) duty cycle percent: raw +-32767 divided by 327.67."""
        raw1, raw2 = struct.unpack(">hh", self._read_command(Opcode.GET_PWMS, 4))
        return raw1 / packets.DUTY_PER_PERCENT, raw2 / packets.DUTY_PER_PERCENT

    # -- drive commands ------------------------------------------------------------

    @staticmethod
    def _check_speed(speed: int) -> int:
        if not 0 <= speed <= packets.SPEED_MAX:
            raise ValueError(f"speed {speed} outside 0..{packets.SPEED_MAX}")
        return speed

    def drive_forward_m1(self, speed: int) -> bool:
        return self._write_command(Opcode.M1_FORWARD, bytes((self._check_speed(speed),)))

    def drive_forward_m2(self, speed: int) -> bool:
        return self._write_command(Opcode.M2_FORWARD, bytes((self._check_speed(speed),)))

    def drive_backward_m1(self, speed: int) -> bool:
        return self._write_command(Opcode.M1_BACKWARD, bytes((self._check_speed(speed),)))

    def drive_backward_m2(self, speed: int) -> bool:
        return self._write_command(Opcode.M2_BACKWARD, bytes((self._check_speed(speed),)))

    def drive_m1_with_signed_duty_and_acceleration(self, duty: int, acceleration: int) -> bool:
        return self._write_command(Opcode.M1_DUTY_ACCEL,
                                   packets.pack_duty_accel(duty, acceleration))

    def drive_m2_with_signed_duty_and_acceleration(self, duty: int, acceleration: int) -> bool:
        return self._write_command(Opcode.M2_DUTY_ACCEL,
                                   packets.pack_duty_accel(duty, acceleration))

    def set_m1_max_current_limit(self, amps: float) -> bool:
        return self._write_command(Opcode.SET_M1_MAX_CURRENT,
                                   struct.pack(">I", round(amps * 100)))

    def set_m2_max_current_limit(self, amps: float) -> bool:
        return self._write_command(Opcode.SET_M2_MAX_CURRENT,
                                   struct.pack(">I", round(amps * 100)))

    def stop_both(self) -> bool:
        """Convenience: full stop on both channels."""
        ok1 = self.drive_forward_m1(0)
        ok2 = self.drive_forward_m2(0)
        return ok1 and ok2
