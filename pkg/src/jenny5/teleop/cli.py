"""`jenny-server`: run the teleoperation service against a rig config."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import uvicorn

from jenny5.teleop.rig import RobotRig, load_rig_config
from jenny5.teleop.server import create_app


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jenny-server",
        description="WebSocket teleoperation server (endpoint /ws, health at /healthz).",
    )
    parser.add_argument("--config", required=True, help="rig config JSON (see configs/rig.json)")
    parser.add_argument("--host", default="0.0.0.0")
    parser.add_argument("--port", type=int, default=8443)
    parser.add_argument("--tls-cert", help="PEM certificate; enables TLS when given")
    parser.add_argument("--tls-key", help="PEM private key for --tls-cert")
    parser.add_argument("--web-dir", default="frontend/dist",
                        help="static browser client bundle to serve at / (if present)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = load_rig_config(args.config)
    rig = RobotRig(config)
    rig.start()
    health = rig.health()
    for name, status in health.items():
        note = "up" if status["healthy"] else f"DOWN ({status['error']})"
        print(f"jenny-server: {name}: {note}", flush=True)
    app = create_app(rig, config, web_dir=Path(args.web_dir))
    try:
        uvicorn.run(
            app,
            host=args.host,
            port=args.port,
            ssl_certfile=args.tls_cert,
            ssl_keyfile=args.tls_key,
            log_level="info",
        )
    finally:
        rig.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
