"""Session state machine.

``step`` is a pure transition function: it never touches sockets or timers.
It returns the new state plus a list of actions for the caller to carry out.

Command centre::

    IDLE --START--> AWAITING_KEY            send KEY_REQUEST(own public key)
    AWAITING_KEY --KEY_RESPONSE--> READY    pin the shooter target's key
    READY --SEND_DATA--> AWAITING_ACK       send DATA(envelope)
    AWAITING_ACK --ACK--> READY             report the peer's timings
    AWAITING_* --TIMEOUT--> same            resend, until max_retries
    AWAITING_* --TIMEOUT--> CLOSED          once retries are exhausted
    AWAITING_* --ERROR--> CLOSED

Shooter target::

    IDLE --KEY_REQUEST--> READY             send KEY_RESPONSE(own public key)
    READY --KEY_REQUEST--> READY            same key again (response was lost)
    READY --DATA--> READY                   open(); send ACK(timings) or ERROR
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from ..errors import CorruptCiphertext, ProtocolViolation, SignatureInvalid
from ..primitives.rsa import PublicKey
from .envelope import Envelope, encode_envelope, open
from .messages import ERROR_CODES, MsgType, TimingReport, encode_public
from .state import Phase, Role, SessionState


# --- events ----------------------------------------------------------------

@dataclass(frozen=True)
class Start:
    pass


@dataclass(frozen=True)
class KeyRequestReceived:
    peer_public: PublicKey
    session_id: int = 0


@dataclass(frozen=True)
class KeyResponseReceived:
    peer_public: PublicKey


@dataclass(frozen=True)
class SendData:
    envelope: Envelope


@dataclass(frozen=True)
class DataReceived:
    envelope: Envelope


@dataclass(frozen=True)
class AckReceived:
    report: TimingReport


@dataclass(frozen=True)
class ErrorReceived:
    code: str


@dataclass(frozen=True)
class Timeout:
    pass


# --- actions ---------------------------------------------------------------

@dataclass(frozen=True)
class Send:
    msg_type: MsgType
    payload: bytes


@dataclass(frozen=True)
class Deliver:
    plaintext: bytes
    report: TimingReport


@dataclass(frozen=True)
class Report:
    report: TimingReport


@dataclass(frozen=True)
class Fail:
    code: str


def _violation(state, event):
    raise ProtocolViolation(
        f"{type(event).__name__} is not valid for {state.role.value} in phase {state.phase.value}"
    )


def _retransmit(state):
    if state.retries < state.max_retries:
        return replace(state, retries=state.retries + 1), [Send(*state.pending)]
    return replace(state, phase=Phase.CLOSED, pending=None), [Fail("delivery-failed")]


def _command_centre(state, event):
    phase = state.phase
    if phase is Phase.IDLE and isinstance(event, Start):
        msg = (MsgType.KEY_REQUEST, encode_public(state.own_keys.public))
        return replace(state, phase=Phase.AWAITING_KEY, pending=msg, retries=0), [Send(*msg)]
    if phase is Phase.AWAITING_KEY and isinstance(event, KeyResponseReceived):
        peer = PublicKey(*event.peer_public)
        return replace(state, phase=Phase.READY, peer_public=peer, pending=None, retries=0), []
    if phase is Phase.READY and isinstance(event, SendData):
        msg = (MsgType.DATA, encode_envelope(event.envelope))
        return replace(state, phase=Phase.AWAITING_ACK, pending=msg, retries=0), [Send(*msg)]
    if phase is Phase.AWAITING_ACK and isinstance(event, AckReceived):
        new = replace(state, phase=Phase.READY, pending=None, retries=0, last_report=event.report)
        return new, [Report(event.report)]
    if phase in (Phase.AWAITING_KEY, Phase.AWAITING_ACK):
        if isinstance(event, Timeout):
            return _retransmit(state)
        if isinstance(event, ErrorReceived):
            return replace(state, phase=Phase.CLOSED, pending=None), [Fail(event.code)]
    _violation(state, event)


def _error(code):
    return [Send(MsgType.ERROR, bytes([ERROR_CODES[code]])), Fail(code)]


def _shooter_target(state, event):
    phase = state.phase
    if isinstance(event, KeyRequestReceived) and (
        phase is Phase.IDLE
        or (phase is Phase.READY and tuple(event.peer_public) == tuple(state.peer_public))
    ):
        new = replace(
            state, phase=Phase.READY, peer_public=PublicKey(*event.peer_public), session_id=event.session_id
        )
        return new, [Send(MsgType.KEY_RESPONSE, encode_public(state.own_keys.public))]
    if phase is Phase.READY and isinstance(event, DataReceived):
        env = event.envelope
        # trust on first use: the key from KEY_REQUEST is the only one accepted
        if tuple(env.sender_public) != tuple(state.peer_public):
            return state, _error("signature-invalid")
        profile = {}
        try:
            plaintext = open(state, env, profile)
        except SignatureInvalid:
            return state, _error("signature-invalid")
        except CorruptCiphertext:
            return state, _error("corrupt-ciphertext")
        report = TimingReport(
            verify_us=round(profile["verify_us"]),
            decrypt_us=round(profile["unwrap_us"] + profile["decrypt_us"]),
        )
        return state, [Deliver(plaintext, report), Send(MsgType.ACK, report.encode())]
    _violation(state, event)


def step(state: SessionState, event) -> tuple[SessionState, list]:
    """Apply one event.  Undefined (state, event) pairs raise
    ProtocolViolation and leave ``state`` untouched."""
    if state.role is Role.COMMAND_CENTRE:
        return _command_centre(state, event)
    return _shooter_target(state, event)


__all__ = [
    "AckReceived",
    "DataReceived",
    "Deliver",
    "ErrorReceived",
    "Fail",
    "KeyRequestReceived",
    "KeyResponseReceived",
    "Report",
    "Send",
    "SendData",
    "Start",
    "Timeout",
    "step",
]
