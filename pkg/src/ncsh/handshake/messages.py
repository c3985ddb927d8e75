"""Message types and the small fixed payloads carried by handshake frames."""
from __future__ import annotations

import enum
import struct
from dataclasses import dataclass

from ..errors import InvalidArgument
from ..primitives.rsa import PublicKey


class MsgType(enum.IntEnum):
    KEY_REQUEST = 0x01
    KEY_RESPONSE = 0x02
    DATA = 0x03
    ACK = 0x04
    ERROR = 0x05
    TIME_REPORT = 0x06


ERROR_CODES = {"signature-invalid": 1, "corrupt-ciphertext": 2, "protocol-violation": 3}
ERROR_NAMES = {v: k for k, v in ERROR_CODES.items()}


def int_to_octets(x: int) -> bytes:
    return x.to_bytes((x.bit_length() + 7) // 8, "big")


class Reader:
    """Cursor over a payload; every overrun or non-canonical integer raises."""

    def __init__(self, data: bytes, error=InvalidArgument):
        self.data = bytes(data)
        self.pos = 0
        self.error = error

    def take(self, n: int) -> bytes:
        if n < 0 or self.pos + n > len(self.data):
            raise self.error("payload truncated")
        out = self.data[self.pos:self.pos + n]
        self.pos += n
        return out

    def uint(self, width: int) -> int:
        return int.from_bytes(self.take(width), "big")

    def bigint(self, len_width: int = 4) -> int:
        raw = self.take(self.uint(len_width))
        if raw[:1] == b"\x00":
            raise self.error("non-minimal integer encoding")
        return int.from_bytes(raw, "big")

    def done(self) -> None:
        if self.pos != len(self.data):
            raise self.error("trailing octets in payload")


def put_bigint(x: int, len_width: int = 4) -> bytes:
    raw = int_to_octets(x)
    return len(raw).to_bytes(len_width, "big") + raw


def encode_public(pub: tuple[int, int]) -> bytes:
    e, n = pub
    return put_bigint(e) + put_bigint(n)


def decode_public(payload: bytes) -> PublicKey:
    r = Reader(payload)
    e = r.bigint()
    n = r.bigint()
    r.done()
    if n < 2 or e < 1:
        raise InvalidArgument("degenerate public key")
    return PublicKey(e, n)


@dataclass(frozen=True)
class TimingReport:
    """Shooter-target measurements returned to the command centre (µs)."""

    verify_us: int
    decrypt_us: int

    def encode(self) -> bytes:
        return struct.pack("!QQ", self.verify_us, self.decrypt_us)

    @classmethod
    def decode(cls, payload: bytes) -> TimingReport:
        if len(payload) != 16:
            raise InvalidArgument("timing report must be 16 octets")
        return cls(*struct.unpack("!QQ", payload))
