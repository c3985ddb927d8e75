from __future__ import annotations

import time

from ..errors import ConflictingDuplicate, InvalidArgument, MissingFragment
from ..handshake.messages import MsgType
from .frame import MAX_PAYLOAD, Frame, encode_frame

DEFAULT_MAX_FRAGMENT = 1400


def fragment(payload: bytes, max_fragment: int = DEFAULT_MAX_FRAGMENT) -> list[tuple[int, int, bytes]]:
    if not 1 <= max_fragment <= MAX_PAYLOAD:
        raise InvalidArgument(f"max_fragment must be in [1, {MAX_PAYLOAD}]")
    payload = bytes(payload)
    chunks = [payload[i:i + max_fragment] for i in range(0, len(payload), max_fragment)] or [b""]
    if len(chunks) > 0xFFFF:
        raise InvalidArgument("payload needs more than 65535 fragments")
    return [(i, len(chunks), c) for i, c in enumerate(chunks)]


def reassemble(fragments) -> bytes:
    """Inverse of :func:`fragment`; arrival order does not matter."""
    parts: dict[int, bytes] = {}
    count = None
    for idx, total, chunk in fragments:
        if count is None:
            count = total
        elif total != count:
            raise ConflictingDuplicate(f"fragment count changed from {count} to {total}")
        if idx in parts and parts[idx] != chunk:
            raise ConflictingDuplicate(f"fragment {idx} arrived twice with different content")
        parts[idx] = chunk
    if count is None:
        raise MissingFragment("no fragments")
    missing = [i for i in range(count) if i not in parts]
    if missing:
        raise MissingFragment(f"missing fragments {missing}")
    return b"".join(parts[i] for i in range(count))


def frames_for(msg_type: MsgType, session_id: int, payload: bytes,
               max_fragment: int = DEFAULT_MAX_FRAGMENT) -> list[bytes]:
    return [
        encode_frame(Frame(msg_type, session_id, chunk, idx, count))
        for idx, count, chunk in fragment(payload, max_fragment)
    ]


class Reassembler:
    """Collects frames per (session, message type) until a message is whole.

    Identical duplicates are ignored.  Partial messages older than
    ``timeout_s`` are discarded by :meth:`expire`.
    """

    def __init__(self, timeout_s: float = 5.0, clock=time.monotonic):
        self.timeout_s = timeout_s
        self.clock = clock
        self._partial: dict[tuple[int, MsgType], tuple[float, int, dict[int, bytes]]] = {}

    def add(self, frame: Frame) -> bytes | None:
        key = (frame.session_id, frame.msg_type)
        if frame.frag_count == 1:
            self._partial.pop(key, None)
            return frame.payload
        started, count, parts = self._partial.get(key, (self.clock(), frame.frag_count, {}))
        if count != frame.frag_count:
            raise ConflictingDuplicate("fragment count changed mid-message")
        old = parts.get(frame.frag_index)
        if old is not None and old != frame.payload:
            raise ConflictingDuplicate(f"fragment {frame.frag_index} conflicts")
        parts[frame.frag_index] = frame.payload
        if len(parts) == count:
            del self._partial[key]
            return b"".join(parts[i] for i in range(count))
        self._partial[key] = (started, count, parts)
        return None

    def expire(self) -> list[MissingFragment]:
        now = self.clock()
        dropped = []
        for key, (started, count, parts) in list(self._partial.items()):
            if now - started > self.timeout_s:
                del self._partial[key]
                missing = sorted(set(range(count)) - parts.keys())
                dropped.append(MissingFragment(f"session {key[0]:#x} {key[1].name}: missing {missing}"))
        return dropped
