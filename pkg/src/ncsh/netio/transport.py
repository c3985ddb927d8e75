"""UDP endpoints and stop-and-wait delivery."""
from __future__ import annotations

import logging
import os
import socket
import time
from dataclasses import dataclass

from ..errors import ConflictingDuplicate, FrameError, InvalidArgument
from ..handshake.messages import MsgType
from .fragment import Reassembler
from .frame import decode_frame

log = logging.getLogger(__name__)

DEFAULT_PORT = 47001


def listener_port(default: int = DEFAULT_PORT) -> int:
    value = os.environ.get("NCSH_PORT")
    return int(value) if value else default


class UdpEndpoint:
    """A datagram socket, optionally bound to one peer address."""

    def __init__(self, sock: socket.socket, peer=None):
        self.sock = sock
        self.peer = peer

    @classmethod
    def connect(cls, host: str, port: int) -> UdpEndpoint:
        info = socket.getaddrinfo(host, port, type=socket.SOCK_DGRAM)[0]
        sock = socket.socket(info[0], socket.SOCK_DGRAM)
        return cls(sock, info[4])

    @classmethod
    def bind(cls, host: str, port: int) -> UdpEndpoint:
        info = socket.getaddrinfo(host, port, type=socket.SOCK_DGRAM, flags=socket.AI_PASSIVE)[0]
        sock = socket.socket(info[0], socket.SOCK_DGRAM)
        sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        sock.bind(info[4])
        return cls(sock)

    @property
    def address(self):
        return self.sock.getsockname()

    def send(self, datagram: bytes) -> None:
        self.sock.sendto(datagram, self.peer)

    def sendto(self, datagram: bytes, addr) -> None:
        self.sock.sendto(datagram, addr)

    def recv_from(self, timeout: float | None):
        self.sock.settimeout(timeout)
        try:
            return self.sock.recvfrom(65535)
        except (socket.timeout, BlockingIOError):
            return None

    def recv(self, timeout: float | None) -> bytes | None:
        got = self.recv_from(timeout)
        return got[0] if got else None

    def close(self) -> None:
        self.sock.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


@dataclass
class DeliveryReport:
    delivered: bool
    transmissions: int
    msg_type: MsgType | None = None
    payload: bytes | None = None
    elapsed_s: float = 0.0


def send_reliable(endpoint, frame_set, timeout_ms: float, max_retries: int, *,
                  expect=None, session_id=None, on_timeout=None, clock=time.monotonic) -> DeliveryReport:
    """Send every fragment of one message, then wait for the reply message.

    On timeout the whole fragment set is sent again, up to ``max_retries``
    times, or for as long as ``on_timeout()`` returns true when it is given.
    Delivery failure is reported, not raised; socket errors propagate.
    """
    if timeout_ms <= 0:
        raise InvalidArgument("timeout_ms must be positive")
    timeout = timeout_ms / 1000.0
    reasm = Reassembler()
    t0 = clock()
    attempts = 0
    while True:
        for datagram in frame_set:
            endpoint.send(datagram)
        attempts += 1
        deadline = clock() + timeout
        while (remaining := deadline - clock()) > 0:
            data = endpoint.recv(remaining)
            if data is None:
                break
            try:
                frame = decode_frame(data)
            except FrameError as exc:
                log.debug("dropping datagram: %s", exc)
                continue
            if session_id is not None and frame.session_id != session_id:
                continue
            if expect is not None and frame.msg_type not in expect:
                continue
            try:
                payload = reasm.add(frame)
            except ConflictingDuplicate:
                continue
            if payload is not None:
                return DeliveryReport(True, attempts, frame.msg_type, payload, clock() - t0)
        retry = on_timeout() if on_timeout is not None else attempts <= max_retries
        if not retry:
            return DeliveryReport(False, attempts, elapsed_s=clock() - t0)
        log.debug("timeout after attempt %d, retransmitting", attempts)
