"""Incremental splitter for `#`-terminated byte streams.

The decoder accepts arbitrary chunk boundaries and yields exactly the frames
a single pass over the concatenated stream would yield. Oversized frames are
dropped and the decoder resynchronizes at the next ``#``.
"""

from __future__ import annotations

DEFAULT_MAX_FRAME = 512


class BufferOverflowError(RuntimeError):
    """A frame grew past the configured maximum without a terminator.

    Raised at the end of the offending :meth:`FrameDecoder.feed` call, after
    the whole chunk has been consumed; ``frames`` carries any complete frames
    found in the same call so no data is lost.
    """

    def __init__(self, max_frame: int, frames: list[bytes]):
        super().__init__(f"frame exceeded {max_frame} bytes without '#'")
        self.max_frame = max_frame
        self.frames = frames


class FrameDecoder:
    """Stateful byte-stream splitter. Single-owner; not safe for concurrent use."""

    def __init__(self, max_frame: int = DEFAULT_MAX_FRAME):
        if max_frame < 2:
            raise ValueError("max_frame must be at least 2")
        self.max_frame = max_frame
        self._buf = bytearray()
        self._discarding = False
        self._overflow_count = 0

    @property
    def overflow_count(self) -> int:
        """Total oversized frames dropped since construction."""
        return self._overflow_count

    @property
    def pending(self) -> int:
        """Bytes of the current partial frame held in the buffer."""
        return len(self._buf)

    def feed(self, chunk: bytes) -> list[bytes]:
        """Consume a chunk; return all frames completed by it.

        Frames include their ``#`` terminator. A trailing partial frame stays
        buffered for the next call.
        """
        frames: list[bytes] = []
        overflowed = False
        for byte in chunk:
            if byte == 0x23:  # '#'
                if self._discarding:
                    self._discarding = False
                else:
                    self._buf.append(byte)
                    frames.append(bytes(self._buf))
                self._buf.clear()
                continue
            if self._discarding:
                continue
            self._buf.append(byte)
            if len(self._buf) >= self.max_frame:
                # even an immediate '#' could not fit within max_frame
                self._buf.clear()
                self._discarding = True
                self._overflow_count += 1
                overflowed = True
        if overflowed:
            raise BufferOverflowError(self.max_frame, frames)
        return frames
