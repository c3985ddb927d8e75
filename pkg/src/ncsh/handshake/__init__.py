"""Digital signature protocol, calibration, envelopes and the session machine."""
from .envelope import STAGE_COUNTS, Envelope, decode_envelope, encode_envelope, open, seal, signed_body
from .messages import MsgType, TimingReport, decode_public, encode_public
from .session import (
    AckReceived,
    DataReceived,
    Deliver,
    ErrorReceived,
    Fail,
    KeyRequestReceived,
    KeyResponseReceived,
    Report,
    Send,
    SendData,
    Start,
    Timeout,
    step,
)
from .signature import (
    homomorphic_product_check,
    sign_digest,
    sign_literal,
    verify_digest,
    verify_literal,
)
from .state import MAX_RETRIES, RETRANSMIT_TIMEOUT_MS, Phase, Role, SessionState
from .suite import SigMode, SuiteParams, calibrate
from ..primitives.rsa import SecurityLevel
from ..primitives.symmetric import CipherSuite

__all__ = [
    "AckReceived", "CipherSuite", "DataReceived", "Deliver", "Envelope", "ErrorReceived", "Fail",
    "KeyRequestReceived", "KeyResponseReceived", "MAX_RETRIES", "MsgType", "Phase",
    "RETRANSMIT_TIMEOUT_MS", "Report", "Role", "STAGE_COUNTS", "SecurityLevel", "Send", "SendData",
    "SessionState", "SigMode", "Start", "SuiteParams", "Timeout", "TimingReport", "calibrate",
    "decode_envelope", "decode_public", "encode_envelope", "encode_public",
    "homomorphic_product_check", "open", "seal", "sign_digest", "sign_literal", "signed_body",
    "step", "verify_digest", "verify_literal",
]
