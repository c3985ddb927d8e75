from __future__ import annotations

import enum
from dataclasses import dataclass

from ..errors import InvalidArgument
from ..primitives.rsa import PublicKey, RsaKeyPair
from .messages import MsgType, TimingReport
from .suite import SuiteParams

MAX_RETRIES = 5
RETRANSMIT_TIMEOUT_MS = 500


class Role(enum.Enum):
    COMMAND_CENTRE = "command-centre"
    SHOOTER_TARGET = "shooter-target"


class Phase(enum.Enum):
    IDLE = "idle"
    AWAITING_KEY = "awaiting-key"
    READY = "ready"
    AWAITING_ACK = "awaiting-ack"
    CLOSED = "closed"


@dataclass(frozen=True)
class SessionState:
    role: Role
    own_keys: RsaKeyPair
    params: SuiteParams
    session_id: int = 0
    phase: Phase = Phase.IDLE
    peer_public: PublicKey | None = None
    retries: int = 0
    max_retries: int = MAX_RETRIES
    # last unacknowledged message, resent on TIMEOUT
    pending: tuple[MsgType, bytes] | None = None
    last_report: TimingReport | None = None

    def __post_init__(self):
        if not 0 <= self.session_id < 1 << 64:
            raise InvalidArgument("session id must fit in 64 bits")
        if not 0 <= self.retries <= self.max_retries:
            raise InvalidArgument(f"retries {self.retries} outside [0, {self.max_retries}]")
        # CLOSED may be reached before any key arrived, so it allows either
        if self.phase in (Phase.READY, Phase.AWAITING_ACK) and self.peer_public is None:
            raise InvalidArgument(f"phase {self.phase.value} needs the peer public key")
        if self.phase in (Phase.IDLE, Phase.AWAITING_KEY) and self.peer_public is not None:
            raise InvalidArgument(f"phase {self.phase.value} cannot hold a peer public key")
