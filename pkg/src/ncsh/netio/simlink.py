"""Deterministic in-process datagram link for tests.

Both ends share one seeded RNG.  A send is dropped with probability
``drop_rate``; a delivered datagram swaps places with the one queued before
it with probability ``reorder_rate``.  Time is virtual: ``recv`` never
sleeps, it first lets any attached handler drain its inbox and then returns
``None`` if nothing is waiting, which callers treat as a timeout.
"""
from __future__ import annotations

import collections
import random

from ..errors import InvalidArgument


class SimEndpoint:
    def __init__(self, link: LossyLink, name: str):
        self.link = link
        self.name = name
        self.inbox: collections.deque[bytes] = collections.deque()
        self.handler = None

    def send(self, datagram: bytes) -> None:
        self.link._transmit(self.name, bytes(datagram))

    def recv(self, timeout: float | None = None) -> bytes | None:
        self.link.pump()
        return self.inbox.popleft() if self.inbox else None

    def serve(self, handler) -> None:
        """Answer each arriving datagram with ``handler(datagram)`` replies."""
        self.handler = handler


class LossyLink:
    def __init__(self, seed, drop_rate: float = 0.0, reorder_rate: float = 0.0, tamper=None):
        for name, rate in (("drop_rate", drop_rate), ("reorder_rate", reorder_rate)):
            if not 0.0 <= rate <= 1.0:
                raise InvalidArgument(f"{name} must be in [0, 1], got {rate}")
        self.rng = random.Random(seed)
        self.drop_rate = drop_rate
        self.reorder_rate = reorder_rate
        # tamper(src, datagram) -> datagram, or None to drop it
        self.tamper = tamper
        self.a = SimEndpoint(self, "a")
        self.b = SimEndpoint(self, "b")
        self.trace: list[tuple[str, bytes]] = []
        self.dropped = 0

    def _transmit(self, src: str, datagram: bytes) -> None:
        if self.drop_rate and self.rng.random() < self.drop_rate:
            self.dropped += 1
            return
        if self.tamper is not None:
            datagram = self.tamper(src, datagram)
            if datagram is None:
                self.dropped += 1
                return
        inbox = (self.b if src == "a" else self.a).inbox
        inbox.append(datagram)
        self.trace.append((src, datagram))
        if self.reorder_rate and len(inbox) >= 2 and self.rng.random() < self.reorder_rate:
            inbox[-1], inbox[-2] = inbox[-2], inbox[-1]

    def pump(self) -> None:
        busy = True
        while busy:
            busy = False
            for ep in (self.a, self.b):
                if ep.handler is None:
                    continue
                while ep.inbox:
                    busy = True
                    for reply in ep.handler(ep.inbox.popleft()):
                        ep.send(reply)


def lossy_link(seed, drop_rate: float = 0.0, reorder_rate: float = 0.0, tamper=None):
    """Return the two endpoints of a fresh :class:`LossyLink`."""
    link = LossyLink(seed, drop_rate, reorder_rate, tamper)
    return link.a, link.b
