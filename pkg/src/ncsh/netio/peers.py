"""The two protocol roles driven over a datagram endpoint.

The command centre is a blocking client built on :func:`send_reliable`.  The
shooter target is a datagram handler (``handle``) so the same object serves a
real UDP socket or the in-process simulated link.
"""
from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field

from ..errors import CorruptCiphertext, InvalidArgument, NcshError, ProtocolViolation
from ..handshake.envelope import decode_envelope, seal
from ..handshake.messages import ERROR_CODES, ERROR_NAMES, MsgType, TimingReport, decode_public
from ..handshake.session import (
    AckReceived,
    DataReceived,
    Deliver,
    ErrorReceived,
    Fail,
    KeyRequestReceived,
    KeyResponseReceived,
    Send,
    SendData,
    Start,
    Timeout,
    step,
)
from ..handshake.state import MAX_RETRIES, RETRANSMIT_TIMEOUT_MS, Phase, Role, SessionState
from ..primitives.sha1 import sha1
from .fragment import DEFAULT_MAX_FRAGMENT, Reassembler, frames_for
from .frame import decode_frame
from .transport import send_reliable

log = logging.getLogger(__name__)

_REPLIES = {
    MsgType.KEY_REQUEST: {MsgType.KEY_RESPONSE, MsgType.ERROR},
    MsgType.DATA: {MsgType.ACK, MsgType.ERROR},
}


@dataclass
class SessionOutcome:
    """What the command centre learned from one session.

    ``status`` is ``"ok"``, ``"delivery-failed"``, ``"peer-key-mismatch"`` or
    an error name received from the peer (``"signature-invalid"`` ...).
    ``sequence`` lists message types in the order they completed on the wire.
    """
    status: str
    session_id: int
    report: TimingReport | None = None
    round_trip_s: float = 0.0
    transmissions: int = 0
    sequence: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def run_command_centre(endpoint, keys, params, message: bytes, rng, *, session_id=None,
                       timeout_ms: float = RETRANSMIT_TIMEOUT_MS, max_retries: int = MAX_RETRIES,
                       max_fragment: int = DEFAULT_MAX_FRAGMENT, expected_peer=None) -> SessionOutcome:
    """Run START -> KEY_REQUEST -> KEY_RESPONSE -> DATA -> ACK."""
    if session_id is None:
        session_id = rng.getrandbits(64)
    state = SessionState(Role.COMMAND_CENTRE, keys, params, session_id=session_id, max_retries=max_retries)
    outcome = SessionOutcome("delivery-failed", session_id)
    t0 = time.perf_counter()

    def exchange(actions):
        nonlocal state
        (send,) = [a for a in actions if isinstance(a, Send)]

        def on_timeout():
            nonlocal state
            state, acts = step(state, Timeout())
            return not any(isinstance(a, Fail) for a in acts)

        frame_set = frames_for(send.msg_type, session_id, send.payload, max_fragment)
        got = send_reliable(endpoint, frame_set, timeout_ms, max_retries,
                            expect=_REPLIES[send.msg_type], session_id=session_id, on_timeout=on_timeout)
        outcome.transmissions += got.transmissions
        if not got.delivered:
            return None
        outcome.sequence += [send.msg_type, got.msg_type]
        if got.msg_type is MsgType.ERROR:
            code = ERROR_NAMES.get(got.payload[0], "protocol-violation") if len(got.payload) == 1 else "protocol-violation"
            state, _ = step(state, ErrorReceived(code))
            outcome.status = code
            return None
        return got.payload

    def finish():
        outcome.round_trip_s = time.perf_counter() - t0
        return outcome

    state, actions = step(state, Start())
    payload = exchange(actions)
    if payload is None:
        return finish()
    try:
        peer = decode_public(payload)
    except InvalidArgument:
        outcome.status = "protocol-violation"
        return finish()
    if expected_peer is not None and tuple(peer) != tuple(expected_peer):
        outcome.status = "peer-key-mismatch"
        return finish()
    state, _ = step(state, KeyResponseReceived(peer))

    env = seal(state, message, rng)
    state, actions = step(state, SendData(env))
    payload = exchange(actions)
    if payload is None:
        return finish()
    try:
        report = TimingReport.decode(payload)
    except InvalidArgument:
        outcome.status = "protocol-violation"
        return finish()
    state, _ = step(state, AckReceived(report))
    outcome.status = "ok"
    outcome.report = report
    return finish()


@dataclass
class Received:
    session_id: int
    status: str
    plaintext: bytes | None = None
    report: TimingReport | None = None


class ShooterTarget:
    """Answers KEY_REQUEST and DATA messages, one state machine per session.

    Replies are cached by (session, type, payload digest) so a retransmitted
    request is answered again without being processed twice.
    """

    def __init__(self, keys, params, max_sessions: int = 1024):
        self.keys = keys
        self.params = params
        self.max_sessions = max_sessions
        self.sessions: dict[int, SessionState] = {}
        self.reassembler = Reassembler()
        self.completed: list[Received] = []
        self._replies: dict[tuple, list[bytes]] = {}

    def handle(self, datagram: bytes) -> list[bytes]:
        try:
            frame = decode_frame(datagram)
            payload = self.reassembler.add(frame)
        except NcshError as exc:
            log.debug("dropping datagram: %s", exc)
            return []
        if payload is None:
            return []
        key = (frame.session_id, frame.msg_type, sha1(payload))
        if key not in self._replies:
            if len(self._replies) >= 4 * self.max_sessions:
                self._replies.pop(next(iter(self._replies)))
            self._replies[key] = [
                d for mtype, body in self._process(frame.session_id, frame.msg_type, payload)
                for d in frames_for(mtype, frame.session_id, body)
            ]
        return self._replies[key]

    def _error(self, sid, code):
        self.completed.append(Received(sid, code))
        return [(MsgType.ERROR, bytes([ERROR_CODES[code]]))]

    def _process(self, sid, mtype, payload):
        if mtype is MsgType.KEY_REQUEST:
            try:
                peer = decode_public(payload)
            except InvalidArgument:
                return self._error(sid, "protocol-violation")
            if sid not in self.sessions and len(self.sessions) >= self.max_sessions:
                self.sessions.pop(next(iter(self.sessions)))
            state = self.sessions.get(sid) or SessionState(Role.SHOOTER_TARGET, self.keys, self.params)
            event = KeyRequestReceived(peer, sid)
        elif mtype is MsgType.DATA:
            state = self.sessions.get(sid)
            if state is None or state.phase is not Phase.READY:
                return self._error(sid, "protocol-violation")
            try:
                event = DataReceived(decode_envelope(payload))
            except CorruptCiphertext:
                return self._error(sid, "corrupt-ciphertext")
        else:
            return self._error(sid, "protocol-violation")
        try:
            state, actions = step(state, event)
        except ProtocolViolation:
            return self._error(sid, "protocol-violation")
        self.sessions[sid] = state
        out = []
        for a in actions:
            if isinstance(a, Send):
                out.append((a.msg_type, a.payload))
            elif isinstance(a, Deliver):
                self.completed.append(Received(sid, "ok", a.plaintext, a.report))
            elif isinstance(a, Fail):
                self.completed.append(Received(sid, a.code))
        return out


def serve_udp(endpoint, target: ShooterTarget, *, once: bool = False, linger_s: float = 0.5,
              poll_s: float = 0.2, should_stop=None) -> list[Received]:
    """Serve datagrams until ``should_stop()`` is true, or, with ``once``,
    until one session has finished and the link has been quiet for
    ``linger_s`` (so a lost ACK can still be answered from the cache)."""
    seen = len(target.completed)
    quiet_since = None
    while should_stop is None or not should_stop():
        got = endpoint.recv_from(poll_s)
        now = time.monotonic()
        if got is None:
            if once and quiet_since is not None and now - quiet_since >= linger_s:
                break
            continue
        data, addr = got
        for reply in target.handle(data):
            endpoint.sendto(reply, addr)
        if once and len(target.completed) > seen:
            quiet_since = now
    return target.completed[seen:]


def simulate_session(seed, keys_cc, keys_st, params, message: bytes, *, drop_rate=0.0,
                     reorder_rate=0.0, tamper=None, **kwargs) -> tuple[SessionOutcome, ShooterTarget]:
    """One full session over a seeded :func:`lossy_link`."""
    from .simlink import lossy_link

    a, b = lossy_link(seed, drop_rate, reorder_rate, tamper)
    target = ShooterTarget(keys_st, params)
    b.serve(target.handle)
    rng = random.Random(seed)
    return run_command_centre(a, keys_cc, params, message, rng, **kwargs), target


__all__ = [
    "Received",
    "SessionOutcome",
    "ShooterTarget",
    "run_command_centre",
    "serve_udp",
    "simulate_session",
]
