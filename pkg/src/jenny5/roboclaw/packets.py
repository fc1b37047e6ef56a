"""Packet layer for the motor-board link.

The boards run a proprietary firmware, so the packet format here is our own,
modeled on the packet-serial convention those boards use: one address byte
(default 0x80), one opcode byte, an opcode-defined payload, and a CRC-16/CCITT
(poly 0x1021, init 0, big-endian) over address+opcode+payload. Write commands
are acknowledged with a single 0xFF byte; read commands answer with the
response payload followed by a CRC over address+opcode+response. The full
table lives in ``docs/roboclaw-protocol.md``.
"""

from __future__ import annotations

import struct

DEFAULT_ADDRESS = 0x80
ACK = 0xFF

DUTY_MIN, DUTY_MAX = -32768, 32767
ACCEL_MIN, ACCEL_MAX = 0, 655359
SPEED_MAX = 127
DUTY_PER_PERCENT = 327.67
VERSION_MAX_BYTES = 48


class Opcode:
    M1_FORWARD = 0
    M1_BACKWARD = 1
    M2_FORWARD = 4
    M2_BACKWARD = 5
    GET_FIRMWARE_VERSION = 21
    GET_MAIN_BATTERY = 24
    GET_PWMS = 48
    GET_CURRENTS = 49
    M1_DUTY_ACCEL = 52
    M2_DUTY_ACCEL = 53
    GET_TEMPERATURE = 82
    SET_M1_MAX_CURRENT = 133
    SET_M2_MAX_CURRENT = 134


#: request payload length per opcode (reads carry none)
REQUEST_PAYLOAD_LEN = {
    Opcode.M1_FORWARD: 1,
    Opcode.M1_BACKWARD: 1,
    Opcode.M2_FORWARD: 1,
    Opcode.M2_BACKWARD: 1,
    Opcode.GET_FIRMWARE_VERSION: 0,
    Opcode.GET_MAIN_BATTERY: 0,
    Opcode.GET_PWMS: 0,
    Opcode.GET_CURRENTS: 0,
    Opcode.M1_DUTY_ACCEL: 6,
    Opcode.M2_DUTY_ACCEL: 6,
    Opcode.GET_TEMPERATURE: 0,
    Opcode.SET_M1_MAX_CURRENT: 4,
    Opcode.SET_M2_MAX_CURRENT: 4,
}

#: fixed response payload length for read opcodes (version is variable)
RESPONSE_PAYLOAD_LEN = {
    Opcode.GET_MAIN_BATTERY: 2,
    Opcode.GET_PWMS: 4,
    Opcode.GET_CURRENTS: 4,
    Opcode.GET_TEMPERATURE: 2,
}

WRITE_OPCODES = frozenset({
    Opcode.M1_FORWARD, Opcode.M1_BACKWARD, Opcode.M2_FORWARD, Opcode.M2_BACKWARD,
    Opcode.M1_DUTY_ACCEL, Opcode.M2_DUTY_ACCEL,
    Opcode.SET_M1_MAX_CURRENT, Opcode.SET_M2_MAX_CURRENT,
})


class PacketError(ValueError):
    pass


class CrcError(PacketError):
    pass


def crc16_ccitt(data: bytes, crc: int = 0) -> int:
    for byte in data:
        crc ^= (byte & 0xFF) << 8
        for _ in range(8):
            if crc & 0x8000:
                crc = ((crc << 1) ^ 0x1021) & 0xFFFF
            else:
                crc = (crc << 1) & 0xFFFF
    return crc & 0xFFFF


def build_request(address: int, opcode: int, payload: bytes = b"") -> bytes:
    head = bytes((address, opcode)) + payload
    return head + struct.pack(">H", crc16_ccitt(head))


def build_read_response(address: int, opcode: int, payload: bytes) -> bytes:
    crc = crc16_ccitt(bytes((address, opcode)) + payload)
    return payload + struct.pack(">H", crc)


def verify_read_response(address: int, opcode: int, payload: bytes, crc: int) -> None:
    expected = crc16_ccitt(bytes((address, opcode)) + payload)
    if crc != expected:
        raise CrcError(f"response CRC mismatch: got {crc:#06x}, want {expected:#06x}")


def pack_duty_accel(duty: int, acceleration: int) -> bytes:
    if not DUTY_MIN <= duty <= DUTY_MAX:
        raise PacketError(f"duty {duty} outside {DUTY_MIN}..{DUTY_MAX}")
    if not ACCEL_MIN <= acceleration <= ACCEL_MAX:
        raise PacketError(f"acceleration {acceleration} outside {ACCEL_MIN}..{ACCEL_MAX}")
    return struct.pack(">hI", duty, acceleration)


def unpack_duty_accel(payload: bytes) -> tuple[int, int]:
    duty, accel = struct.unpack(">hI", payload)
    return duty, accel
