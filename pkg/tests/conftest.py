import sys
from contextlib import contextmanager
from pathlib import Path

# make `tests.wiregen` importable when pytest is invoked from the repo root
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from jenny5.firmware.board import VirtualBoard
from jenny5.firmware.config import BoardConfig
from jenny5.firmware.runner import BoardRunner
from jenny5.firmware.transport import DuplexChannel
from jenny5.host.client import ScufyClient

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


@contextmanager
def live_sim(config: BoardConfig | None = None, speed: float | None = None):
    """A free-running board plus a connected client, torn down afterwards."""
    board = VirtualBoard(config or BoardConfig())
    channel = DuplexChannel()
    runner = BoardRunner(board, channel, speed=speed)
    client = ScufyClient(channel.host_endpoint())
    runner.start()
    try:
        yield board, client
    finally:
        runner.stop()
        runner.join(timeout=2)
        client.close()
