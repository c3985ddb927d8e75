"""Envelope: the DATA payload, its canonical encoding, and seal/open.

Wire layout (all integers big-endian, bignums as minimal magnitudes)::

    suite(1) | sig_mode(1) | e_len(4) e | n_len(4) n
    | wrapped: count(2) then len(4)+bytes per block
    | iv_len(1) iv | ct_len(4) ct
    | sig: count(2) then len(4)+bytes per block

Digest signatures cover every octet before the signature section.
"""
from __future__ import annotations

import collections
from dataclasses import dataclass, replace

from .. import instrument
from ..errors import (
    CorruptCiphertext,
    CorruptSignature,
    IncompatibleModuli,
    InvalidArgument,
    ProtocolViolation,
    SignatureInvalid,
)
from ..primitives.rsa import (
    PublicKey,
    blocks_to_octets,
    octets_to_blocks,
    rsa_decrypt_blockwise,
    rsa_encrypt_blockwise,
)
from ..primitives.symmetric import (
    BLOCK_OCTETS,
    CipherSuite,
    SymmetricKey,
    cbc_open,
    cbc_seal,
    random_bytes,
)
from .messages import Reader, put_bigint
from .signature import sign_digest, sign_literal, verify_digest, verify_literal
from .state import Phase, SessionState
from .suite import SigMode

# how often open() reached each stage; lets tests prove verify-first ordering
STAGE_COUNTS: collections.Counter = collections.Counter()


@dataclass(frozen=True)
class Envelope:
    suite: CipherSuite
    sig_mode: SigMode
    sender_public: PublicKey
    wrapped_key: tuple[int, ...]
    iv: bytes
    ciphertext: bytes
    signature: tuple[int, ...]

    def __post_init__(self):
        if self.suite is CipherSuite.RSA:
            if self.wrapped_key or self.iv:
                raise InvalidArgument("RSA-suite envelope carries no wrapped key or IV")
        elif not self.wrapped_key or len(self.iv) != BLOCK_OCTETS[self.suite]:
            raise InvalidArgument(f"{self.suite.name} envelope needs a wrapped key and IV")
        if not self.signature:
            raise InvalidArgument("envelope signature is empty")


def _blocks(blocks) -> bytes:
    out = [len(blocks).to_bytes(2, "big")]
    out += [put_bigint(b) for b in blocks]
    return b"".join(out)


def signed_body(env: Envelope) -> bytes:
    return b"".join(
        [
            bytes([env.suite, env.sig_mode]),
            put_bigint(env.sender_public.e),
            put_bigint(env.sender_public.n),
            _blocks(env.wrapped_key),
            len(env.iv).to_bytes(1, "big") + env.iv,
            len(env.ciphertext).to_bytes(4, "big") + env.ciphertext,
        ]
    )


def encode_envelope(env: Envelope) -> bytes:
    return signed_body(env) + _blocks(env.signature)


def decode_envelope(data: bytes) -> Envelope:
    r = Reader(data, error=CorruptCiphertext)
    try:
        suite = CipherSuite(r.uint(1))
        sig_mode = SigMode(r.uint(1))
    except ValueError:
        raise CorruptCiphertext("unknown suite or signature mode") from None
    sender = PublicKey(r.bigint(), r.bigint())
    wrapped = tuple(r.bigint() for _ in range(r.uint(2)))
    iv = r.take(r.uint(1))
    ct = r.take(r.uint(4))
    sig = tuple(r.bigint() for _ in range(r.uint(2)))
    r.done()
    try:
        return Envelope(suite, sig_mode, sender, wrapped, iv, ct, sig)
    except InvalidArgument as exc:
        raise CorruptCiphertext(str(exc)) from None


def seal(state: SessionState, plaintext: bytes, rng, profile: dict | None = None) -> Envelope:
    """Encrypt for the peer and sign with our own key.

    ``profile``, when given, receives per-stage timings and the working-set
    peak of the payload encryption stage.
    """
    if state.phase is not Phase.READY or state.peer_public is None:
        raise ProtocolViolation(f"cannot seal in phase {state.phase.value}")
    plaintext = bytes(plaintext)
    own = state.own_keys
    peer = PublicKey(*state.peer_public)
    suite = state.params.suite
    mode = state.params.sig_mode

    if suite is CipherSuite.RSA:
        wrapped, iv = (), b""
        with instrument.stage(profile, "encrypt", meter=True) as meter:
            if meter is not None:
                meter.hold(len(plaintext))
            blocks = rsa_encrypt_blockwise(peer, plaintext)
            ct = blocks_to_octets(blocks, peer.n)
            if meter is not None:
                meter.hold(len(ct))
    else:
        with instrument.stage(profile, "session_key"):
            key = SymmetricKey.generate(suite, rng)
            iv = random_bytes(rng, BLOCK_OCTETS[suite])
            wrapped = tuple(rsa_encrypt_blockwise(peer, key.bytes))
        with instrument.stage(profile, "encrypt", meter=True) as meter:
            if meter is not None:
                meter.hold(len(plaintext))
            ct = cbc_seal(suite, key, iv, plaintext)

    with instrument.stage(profile, "sign"):
        if mode is SigMode.LITERAL and suite is CipherSuite.RSA and blocks:
            try:
                sig = sign_literal(own, blocks, peer.n)
                return Envelope(suite, mode, own.public, wrapped, iv, b"", tuple(sig))
            except IncompatibleModuli:
                pass
        # digest mode, or the literal preconditions do not hold
        env = Envelope(suite, SigMode.DIGEST, own.public, wrapped, iv, ct, (1,))
        return replace(env, signature=tuple(sign_digest(own, signed_body(env))))


def open(state: SessionState, env: Envelope, profile: dict | None = None) -> bytes:  # noqa: A001
    """Verify first, then unwrap and decrypt; raises SignatureInvalid or
    CorruptCiphertext."""
    if state.phase is not Phase.READY:
        raise ProtocolViolation(f"cannot open in phase {state.phase.value}")
    own = state.own_keys

    STAGE_COUNTS["verify"] += 1
    with instrument.stage(profile, "verify"):
        if env.sig_mode is SigMode.DIGEST:
            if not verify_digest(env.sender_public, signed_body(env), env.signature):
                raise SignatureInvalid("signature verification failed")
            literal_blocks = None
        else:
            if env.suite is not CipherSuite.RSA or env.ciphertext:
                raise SignatureInvalid("literal signatures only cover RSA-suite payloads")
            try:
                literal_blocks = verify_literal(env.sender_public, env.signature)
            except CorruptSignature:
                raise SignatureInvalid("signature block out of range") from None

    with instrument.stage(profile, "unwrap"):
        if env.suite is not CipherSuite.RSA:
            STAGE_COUNTS["unwrap"] += 1
            try:
                key = SymmetricKey(rsa_decrypt_blockwise(own.private, env.wrapped_key), env.suite)
            except InvalidArgument:
                raise CorruptCiphertext("unwrapped session key has the wrong length") from None

    STAGE_COUNTS["decrypt"] += 1
    with instrument.stage(profile, "decrypt"):
        if env.suite is not CipherSuite.RSA:
            return cbc_open(env.suite, key, env.iv, env.ciphertext)
        blocks = literal_blocks if literal_blocks is not None else octets_to_blocks(env.ciphertext, own.n)
        return rsa_decrypt_blockwise(own.private, blocks)


__all__ = [
    "Envelope",
    "STAGE_COUNTS",
    "decode_envelope",
    "encode_envelope",
    "open",
    "seal",
    "signed_body",
]
