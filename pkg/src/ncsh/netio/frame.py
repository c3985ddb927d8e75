"""Datagram framing.

Layout, network byte order::

    magic "NCSH"(4) | version(1) | msg_type(1) | session_id(8)
    | frag_index(2) | frag_count(2) | payload_len(4) | payload | check(4)

``check`` is the first four octets of SHA-1 over everything before it.  It
only filters accidental corruption; integrity comes from the signature.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass

from ..errors import (
    BadChecksum,
    BadFragment,
    BadLength,
    BadMagic,
    BadType,
    BadVersion,
    InvalidArgument,
    Truncated,
)
from ..handshake.messages import MsgType
from ..primitives.sha1 import sha1

MAGIC = b"NCSH"
VERSION = 1
MAX_PAYLOAD = 60000
CHECK_OCTETS = 4
_HEADER = struct.Struct("!4sBBQHHI")
HEADER_OCTETS = _HEADER.size  # 22
OVERHEAD = HEADER_OCTETS + CHECK_OCTETS


@dataclass(frozen=True)
class Frame:
    msg_type: MsgType
    session_id: int
    payload: bytes = b""
    frag_index: int = 0
    frag_count: int = 1

    def __post_init__(self):
        if not 0 <= self.session_id < 1 << 64:
            raise InvalidArgument("session id must fit in 64 bits")
        if not 0 <= self.frag_index < self.frag_count <= 0xFFFF:
            raise InvalidArgument(f"bad fragment {self.frag_index}/{self.frag_count}")
        if len(self.payload) > MAX_PAYLOAD:
            raise InvalidArgument(f"frame payload {len(self.payload)} exceeds {MAX_PAYLOAD}")


def encode_frame(f: Frame) -> bytes:
    assert len(f.payload) <= MAX_PAYLOAD
    head = _HEADER.pack(
        MAGIC, VERSION, f.msg_type, f.session_id, f.frag_index, f.frag_count, len(f.payload)
    ) + bytes(f.payload)
    return head + sha1(head)[:CHECK_OCTETS]


def decode_frame(data: bytes) -> Frame:
    data = bytes(data)
    if len(data) < OVERHEAD:
        raise Truncated(f"datagram of {len(data)} octets is shorter than a frame header")
    magic, version, mtype, sid, idx, count, plen = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise BadMagic("bad magic")
    if version != VERSION:
        raise BadVersion(f"unsupported version {version}")
    if plen > MAX_PAYLOAD:
        raise BadLength(f"payload length {plen} exceeds {MAX_PAYLOAD}")
    if len(data) < OVERHEAD + plen:
        raise Truncated("datagram shorter than its payload length")
    if len(data) > OVERHEAD + plen:
        raise BadLength("datagram longer than its payload length")
    body, check = data[:-CHECK_OCTETS], data[-CHECK_OCTETS:]
    if sha1(body)[:CHECK_OCTETS] != check:
        raise BadChecksum("checksum mismatch")
    try:
        mtype = MsgType(mtype)
    except ValueError:
        raise BadType(f"unknown message type {mtype:#04x}") from None
    if idx >= count:
        raise BadFragment(f"fragment index {idx} out of {count}")
    return Frame(mtype, sid, data[HEADER_OCTETS:HEADER_OCTETS + plen], idx, count)
