"""
BCSK message framing over one or two parallel bit streams.

    start       spray slot (bit-1) then a silent guard slot, on every stream
    payload     5-bit ITA2 groups; stream 1 carries the first ceil(n/2)
                letters, stream 2 the rest padded with 00000
    terminator  00000 on every stream, aligned with the payload groups
"""
from dataclasses import dataclass
import math
import numpy as np
from .ita2 import CODEBOOK
from ..utils.errors import (FrameError, MissingStartError, MissingTerminatorError,
                            UnknownCodeError, DomainError)

START = (1, 0)
GROUP = 5
SPLITS = ("halves", "interleave")


@dataclass(frozen=True)
class Frame:
    start: tuple
    payload: np.ndarray  # (streams, 5 * groups)

    @property
    def streams(self) -> int:
        return self.payload.shape[0]

    @property
    def terminator(self) -> np.ndarray:
        return np.zeros((self.streams, GROUP), dtype=np.int8)

    def bits(self) -> np.ndarray:
        start = np.tile(np.asarray(self.start, dtype=np.int8), (self.streams, 1))
        return np.concatenate([start, self.payload, self.terminator], axis=1)

    @property
    def n_slots(self) -> int:
        return len(self.start) + self.payload.shape[1] + GROUP


def _split(letters, streams, split):
    if streams == 1:
        return [letters]
    if split == "halves":
        h = math.ceil(len(letters) / 2)
        return [letters[:h], letters[h:]]
    return [letters[0::2], letters[1::2]]


def encode_message(text: str, streams: int = 2, split: str = "halves", start=START) -> Frame:
    if streams not in (1, 2):
        raise DomainError("only one or two streams are supported")
    if split not in SPLITS:
        raise DomainError(f"split must be one of {SPLITS}")
    letters = CODEBOOK.encode_text(text)
    parts = _split(letters, streams, split)
    groups = max(len(p) for p in parts) if letters else 0
    payload = np.zeros((streams, GROUP * groups), dtype=np.int8)
    for s, part in enumerate(parts):
        for g, code in enumerate(part):
            payload[s, GROUP * g:GROUP * (g + 1)] = code
    blocks = payload.reshape(streams, groups, GROUP)
    if np.any(~blocks.any(axis=(0, 2))):
        raise FrameError("payload contains an aligned 00000 group on every stream")
    return Frame(tuple(start), payload)


def decode_frame(bits, split: str = "halves", start=START) -> str:
    """Inverse of encode_message; every malformed input raises a FrameError."""
    try:
        arr = np.asarray(bits, dtype=np.int64)
    except (TypeError, ValueError):
        raise FrameError("bit streams must be equal-length integer sequences") from None
    if arr.ndim == 1:
        arr = arr[None]
    if arr.ndim != 2 or arr.shape[0] not in (1, 2):
        raise FrameError("expected one or two bit streams")
    if np.any((arr != 0) & (arr != 1)):
        raise FrameError("bit streams must be binary")
    n_start = len(start)
    if arr.shape[1] < n_start or np.any(arr[:, :n_start] != np.asarray(start)):
        raise MissingStartError("streams do not begin with the start signal")
    body = arr[:, n_start:]
    parts = [[] for _ in range(arr.shape[0])]
    padded = [False] * arr.shape[0]
    for g in range(body.shape[1] // GROUP):
        block = body[:, GROUP * g:GROUP * (g + 1)]
        if not block.any():
            return _join(parts, split)
        for s, code in enumerate(block):
            if not code.any():
                if s == 0:
                    raise UnknownCodeError(f"empty group on stream 1 at group {g}")
                padded[s] = True
                continue
            if padded[s]:
                raise FrameError(f"letter after padding on stream {s + 1}")
            parts[s].append(CODEBOOK.decode(code))
    raise MissingTerminatorError("no aligned 00000 terminator found")


def _join(parts, split):
    if len(parts) == 1 or split == "halves":
        return "".join("".join(p) for p in parts)
    out = []
    for i in range(len(parts[0])):
        out.append(parts[0][i])
        if i < len(parts[1]):
            out.append(parts[1][i])
    return "".join(out)


def frame_slots(n_letters: int, streams: int = 2, start_slots: int = len(START)) -> int:
    return start_slots + GROUP * math.ceil(n_letters / streams) + GROUP


def transmission_speedup(n_letters: int) -> float:
    """SISO frame length over MIMO frame length for the same message."""
    return frame_slots(n_letters, 1) / frame_slots(n_letters, 2)
