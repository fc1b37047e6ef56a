"""`scufy-sim`: serve a virtual Scufy board over TCP."""

from __future__ import annotations

import argparse
import sys
import time

from jenny5.firmware.board import VirtualBoard
from jenny5.firmware.config import BoardConfig, load_board_config
from jenny5.firmware.transport import DEFAULT_PORT, TcpBoardServer


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scufy-sim",
        description="Run a virtual Scufy board and serve it over TCP (raw wire bytes).",
    )
    parser.add_argument("--config", help="board config JSON (see configs/*.json)")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=DEFAULT_PORT)
    parser.add_argument("--speed", type=float, default=1.0,
                        help="real-time multiplier; 0 free-runs as fast as possible")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = load_board_config(args.config) if args.config else BoardConfig()
    board = VirtualBoard(config)
    speed = None if args.speed == 0 else args.speed
    server = TcpBoardServer(board, host=args.host, port=args.port,
                            dt=config.dt, speed=speed)
    server.start()
    print(f"scufy-sim: board '{config.name}' (firmware {config.firmware_version}) "
          f"on {server.address[0]}:{server.port}, tick {config.tick_rate_hz:.0f} Hz, "
          f"speed x{args.speed}", flush=True)
    try:
        while server.is_alive():
            time.sleep(0.2)
    except KeyboardInterrupt:
        pass
    finally:
        server.stop()
        server.join(timeout=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
