"""PC-side control library: sends commands, translates frames into events."""

from jenny5.host.client import MotorState, ScufyClient, UnsupportedFeatureError
from jenny5.host.events import DeviceEvent, EventQueue, EventType, event_from_response
from jenny5.host.transport import (
    ConnectFailedError,
    SerialTransport,
    TcpTransport,
    TransportClosedError,
    open_transport,
)

__all__ = [
    "ConnectFailedError",
    "DeviceEvent",
    "EventQueue",
    "EventType",
    "MotorState",
    "ScufyClient",
    "SerialTransport",
    "TcpTransport",
    "TransportClosedError",
    "UnsupportedFeatureError",
    "event_from_response",
    "open_transport",
]
