import random
from dataclasses import replace

import pytest

from ncsh import instrument
from ncsh.errors import (
    CorruptCiphertext,
    CorruptSignature,
    IncompatibleModuli,
    InvalidArgument,
    ProtocolViolation,
    SignatureInvalid,
)
from ncsh.handshake import (
    STAGE_COUNTS,
    CipherSuite,
    Envelope,
    MsgType,
    Phase,
    Role,
    SecurityLevel,
    SessionState,
    SigMode,
    TimingReport,
    calibrate,
    decode_envelope,
    decode_public,
    encode_envelope,
    encode_public,
    homomorphic_product_check,
    open,
    seal,
    sign_digest,
    sign_literal,
    signed_body,
    verify_digest,
    verify_literal,
)
from ncsh.primitives.rsa import rsa_apply, rsa_decrypt_blockwise, rsa_encrypt_blockwise


def ready_pair(cc, st, suite=CipherSuite.AES, level=SecurityLevel.L1, mode=SigMode.DIGEST):
    params = calibrate(level, suite, mode)
    sender = SessionState(Role.COMMAND_CENTRE, cc, params, phase=Phase.READY, peer_public=st.public)
    receiver = SessionState(Role.SHOOTER_TARGET, st, params, phase=Phase.READY, peer_public=cc.public)
    return sender, receiver


class TestCalibrate:
    @pytest.mark.parametrize("level,suite,expected", [
        (SecurityLevel.L1, CipherSuite.AES, (CipherSuite.AES, 512, 16, SigMode.DIGEST)),
        (SecurityLevel.L2, CipherSuite.DES, (CipherSuite.DES, 1024, 8, SigMode.DIGEST)),
        (SecurityLevel.L3, CipherSuite.RSA, (CipherSuite.RSA, 2048, 0, SigMode.DIGEST)),
    ])
    def test_table(self, level, suite, expected):
        p = calibrate(level, suite)
        assert (p.suite, p.rsa_modulus_bits, p.sym_key_octets, p.sig_mode) == expected

    def test_pure(self):
        assert calibrate(SecurityLevel.L2, CipherSuite.AES) == calibrate(SecurityLevel.L2, CipherSuite.AES)


class TestLiteralSignature:
    def test_demo_chain(self, demo_keys):
        bob, alice = demo_keys
        assert 3 * 43 % 64 == 1
        c = rsa_apply(bob.e, bob.n, 2)
        m1 = sign_literal(alice, [c], bob.n)
        assert (c, m1) == (8, [2])
        assert verify_literal(alice.public, m1) == [8]
        assert rsa_apply(bob.d, bob.n, 8) == 2

    def test_empty(self, demo_keys):
        bob, alice = demo_keys
        assert sign_literal(alice, [], bob.n) == []

    def test_moduli_order(self, demo_keys):
        bob, alice = demo_keys
        with pytest.raises(IncompatibleModuli):
            sign_literal(bob, [8], alice.n)

    def test_identity_random_blocks(self, keys):
        a, b = keys(SecurityLevel.L1, 0), keys(SecurityLevel.L1, 1)
        signer, other = (a, b) if a.n > b.n else (b, a)
        rng = random.Random(4)
        blocks = [rng.randrange(other.n) for _ in range(200)]
        assert verify_literal(signer.public, sign_literal(signer, blocks, other.n)) == blocks

    def test_out_of_range_block(self, demo_keys):
        _, alice = demo_keys
        with pytest.raises(CorruptSignature):
            verify_literal(alice.public, [85])

    def test_tampered_m1_breaks_framing(self, keys):
        a, b = keys(SecurityLevel.L1, 0), keys(SecurityLevel.L1, 1)
        signer, recipient = (a, b) if a.n > b.n else (b, a)
        rng = random.Random(9)
        failures = 0
        for _ in range(200):
            msg = rng.randbytes(40)
            m1 = sign_literal(signer, rsa_encrypt_blockwise(recipient.public, msg), recipient.n)
            m1[0] ^= 1 << rng.randrange(signer.n.bit_length() - 1)
            try:
                out = rsa_decrypt_blockwise(recipient.private, verify_literal(signer.public, m1))
                failures += out != msg
            except (CorruptCiphertext, CorruptSignature):
                failures += 1
        assert failures == 200


class TestDigestSignature:
    def test_round_trip(self, l1_pair, rng):
        cc, _ = l1_pair
        for _ in range(100):
            ct = rng.randbytes(rng.randrange(300))
            assert verify_digest(cc.public, ct, sign_digest(cc, ct))

    def test_bit_flips(self, l1_pair, rng):
        cc, _ = l1_pair
        ct = rng.randbytes(64)
        sig = sign_digest(cc, ct)
        for _ in range(1000):
            bad = bytearray(ct)
            i = rng.randrange(8 * len(ct))
            bad[i // 8] ^= 1 << (i % 8)
            assert not verify_digest(cc.public, bytes(bad), sig)
            assert not verify_digest(cc.public, ct, [sig[0] ^ 1 << rng.randrange(cc.n.bit_length())])

    def test_wrong_key(self, l1_pair, rng):
        cc, st = l1_pair
        ct = rng.randbytes(64)
        assert not verify_digest(st.public, ct, sign_digest(cc, ct))

    @pytest.mark.parametrize("sig", [[], [1, 2], [-1]])
    def test_malformed_is_false(self, l1_pair, sig):
        assert verify_digest(l1_pair[0].public, b"x", sig) is False


class TestHomomorphism:
    def test_worked_example(self):
        assert 8 * 27 % 55 == 51 == 6**3 % 55
        assert homomorphic_product_check((3, 55), 2, 3)
        assert homomorphic_product_check((3, 55), 1, 40)

    def test_random_pairs(self, l1_pair, rng):
        pub = l1_pair[0].public
        assert all(homomorphic_product_check(pub, rng.randrange(pub.n), rng.randrange(pub.n)) for _ in range(200))


class TestEnvelope:
    @pytest.mark.parametrize("suite", list(CipherSuite))
    def test_round_trip(self, suite, l1_pair, rng):
        sender, receiver = ready_pair(*l1_pair, suite)
        for n in [0, 1, 7, 8, 15, 16, 17, 61, 62, 63] + [rng.randrange(2049) for _ in range(90)]:
            pt = rng.randbytes(n)
            env = seal(sender, pt, rng)
            assert open(receiver, env) == pt
            assert open(receiver, decode_envelope(encode_envelope(env))) == pt

    def test_rsa_suite_shape(self, l1_pair, rng):
        sender, _ = ready_pair(*l1_pair, CipherSuite.RSA)
        env = seal(sender, b"hello", rng)
        assert env.wrapped_key == () and env.iv == b"" and env.signature

    @pytest.mark.parametrize("suite", list(CipherSuite))
    def test_seals_differ(self, suite, l1_pair, rng):
        sender, _ = ready_pair(*l1_pair, suite)
        if suite is CipherSuite.RSA:
            # textbook RSA is deterministic; only the symmetric suites randomize
            assert seal(sender, b"same", rng) == seal(sender, b"same", rng)
            return
        seen = {encode_envelope(seal(sender, b"same plaintext", rng)) for _ in range(100)}
        assert len(seen) == 100

    def test_wrong_phase(self, l1_pair, rng):
        sender, receiver = ready_pair(*l1_pair)
        with pytest.raises(ProtocolViolation):
            seal(replace(sender, phase=Phase.CLOSED), b"x", rng)
        env = seal(sender, b"x", rng)
        with pytest.raises(ProtocolViolation):
            open(replace(receiver, phase=Phase.CLOSED), env)

    def test_duplicate_opens_identically(self, l1_pair, rng):
        sender, receiver = ready_pair(*l1_pair, CipherSuite.DES)
        env = seal(sender, b"twice", rng)
        assert open(receiver, env) == open(receiver, env) == b"twice"

    def test_invariants(self, l1_pair):
        pub = l1_pair[0].public
        with pytest.raises(InvalidArgument):
            Envelope(CipherSuite.RSA, SigMode.DIGEST, pub, (1,), b"", b"", (1,))
        with pytest.raises(InvalidArgument):
            Envelope(CipherSuite.AES, SigMode.DIGEST, pub, (1,), bytes(8), b"", (1,))
        with pytest.raises(InvalidArgument):
            Envelope(CipherSuite.AES, SigMode.DIGEST, pub, (1,), bytes(16), b"", ())

    @pytest.mark.parametrize("suite", list(CipherSuite))
    def test_tamper_is_signature_invalid_before_unwrap(self, suite, l1_pair, rng):
        sender, receiver = ready_pair(*l1_pair, suite)
        env = seal(sender, rng.randbytes(100), rng)
        for _ in range(100):
            i = rng.randrange(8 * len(env.ciphertext))
            ct = bytearray(env.ciphertext)
            ct[i // 8] ^= 1 << (i % 8)
            before = STAGE_COUNTS.copy()
            with pytest.raises(SignatureInvalid):
                open(receiver, replace(env, ciphertext=bytes(ct)))
            assert STAGE_COUNTS["verify"] == before["verify"] + 1
            assert STAGE_COUNTS["unwrap"] == before["unwrap"]
            assert STAGE_COUNTS["decrypt"] == before["decrypt"]

    def test_tampered_wrapped_key_and_iv(self, l1_pair, rng):
        sender, receiver = ready_pair(*l1_pair)
        env = seal(sender, b"payload", rng)
        with pytest.raises(SignatureInvalid):
            open(receiver, replace(env, wrapped_key=(env.wrapped_key[0] ^ 2,)))
        with pytest.raises(SignatureInvalid):
            open(receiver, replace(env, iv=bytes(16)))

    def test_substituted_sender_key(self, l1_pair, keys, rng):
        # resigning with another key verifies, but the envelope then names that key
        sender, receiver = ready_pair(*l1_pair)
        mallory = keys(SecurityLevel.L1, 7)
        env = seal(sender, b"orders", rng)
        forged = replace(env, sender_public=mallory.public)
        forged = replace(forged, signature=tuple(sign_digest(mallory, signed_body(forged))))
        assert open(receiver, forged) == b"orders"
        assert forged.sender_public != receiver.peer_public

    def test_valid_signature_bad_padding_is_corrupt(self, l1_pair, rng):
        cc, st = l1_pair
        sender, receiver = ready_pair(cc, st)
        env = seal(sender, b"x" * 20, rng)
        ct = bytearray(env.ciphertext)
        ct[-1] ^= 0xFF
        bad = replace(env, ciphertext=bytes(ct))
        bad = replace(bad, signature=tuple(sign_digest(cc, signed_body(bad))))
        with pytest.raises(CorruptCiphertext):
            open(receiver, bad)

    def test_decode_rejects_garbage(self, l1_pair, rng):
        sender, _ = ready_pair(*l1_pair)
        data = encode_envelope(seal(sender, b"abc", rng))
        for cut in (0, 1, 5, len(data) - 1):
            with pytest.raises(CorruptCiphertext):
                decode_envelope(data[:cut])
        with pytest.raises(CorruptCiphertext):
            decode_envelope(data + b"\x00")
        with pytest.raises(CorruptCiphertext):
            decode_envelope(b"\x09" + data[1:])

    def test_encoding_layout(self, l1_pair, rng):
        cc, st = l1_pair
        sender, _ = ready_pair(cc, st)
        env = seal(sender, b"layout", rng)
        data = encode_envelope(env)
        assert data[:2] == bytes([CipherSuite.AES, SigMode.DIGEST])
        e_len = int.from_bytes(data[2:6], "big")
        assert int.from_bytes(data[6:6 + e_len], "big") == cc.e
        assert data.startswith(signed_body(env))

    def test_encrypt_stage_profile(self, l1_pair, rng):
        sender, receiver = ready_pair(*l1_pair, CipherSuite.RSA)
        prof, oprof = {}, {}
        env = seal(sender, rng.randbytes(500), rng, prof)
        open(receiver, env, oprof)
        assert prof["encrypt_peak_octets"] >= len(env.ciphertext)
        assert {"encrypt_us", "sign_us"} <= prof.keys()
        assert {"verify_us", "unwrap_us", "decrypt_us"} <= oprof.keys()
        assert instrument.active() is None


class TestLiteralMode:
    def test_round_trip_when_moduli_allow(self, keys, rng):
        a, b = keys(SecurityLevel.L1, 0), keys(SecurityLevel.L1, 1)
        signer, recipient = (a, b) if a.n > b.n else (b, a)
        sender, receiver = ready_pair(signer, recipient, CipherSuite.RSA, mode=SigMode.LITERAL)
        for _ in range(20):
            pt = rng.randbytes(rng.randrange(1, 300))
            env = seal(sender, pt, rng)
            assert env.sig_mode is SigMode.LITERAL and env.ciphertext == b""
            assert open(receiver, env) == pt

    def test_falls_back_to_digest(self, keys, rng):
        a, b = keys(SecurityLevel.L1, 0), keys(SecurityLevel.L1, 1)
        small, big = (a, b) if a.n < b.n else (b, a)
        sender, receiver = ready_pair(small, big, CipherSuite.RSA, mode=SigMode.LITERAL)
        env = seal(sender, b"fallback", rng)
        assert env.sig_mode is SigMode.DIGEST and open(receiver, env) == b"fallback"
        sender, receiver = ready_pair(big, small, CipherSuite.AES, mode=SigMode.LITERAL)
        assert seal(sender, b"aes", rng).sig_mode is SigMode.DIGEST

    def test_literal_tamper_detected(self, keys, rng):
        a, b = keys(SecurityLevel.L1, 0), keys(SecurityLevel.L1, 1)
        signer, recipient = (a, b) if a.n > b.n else (b, a)
        sender, receiver = ready_pair(signer, recipient, CipherSuite.RSA, mode=SigMode.LITERAL)
        env = seal(sender, b"literal", rng)
        bad = replace(env, signature=(env.signature[0] ^ 4,))
        with pytest.raises((SignatureInvalid, CorruptCiphertext)):
            assert open(receiver, bad) != b"literal"


class TestMessages:
    def test_public_key_codec(self, l1_pair):
        pub = l1_pair[0].public
        assert decode_public(encode_public(pub)) == pub
        with pytest.raises(InvalidArgument):
            decode_public(encode_public(pub) + b"\x00")
        with pytest.raises(InvalidArgument):
            decode_public(b"\x00\x00\x00\x02\x00\x03" + encode_public(pub)[6:])  # non-minimal e

    def test_timing_report(self):
        r = TimingReport(12, 3456)
        assert len(r.encode()) == 16 and TimingReport.decode(r.encode()) == r
        with pytest.raises(InvalidArgument):
            TimingReport.decode(b"\x00" * 15)

    def test_msg_type_values(self):
        assert [int(t) for t in MsgType] == [1, 2, 3, 4, 5, 6]


class TestSessionState:
    def test_invariants(self, l1_pair):
        cc, st = l1_pair
        params = calibrate(SecurityLevel.L1, CipherSuite.AES)
        with pytest.raises(InvalidArgument):
            SessionState(Role.COMMAND_CENTRE, cc, params, phase=Phase.READY)
        with pytest.raises(InvalidArgument):
            SessionState(Role.COMMAND_CENTRE, cc, params, peer_public=st.public)
        with pytest.raises(InvalidArgument):
            SessionState(Role.COMMAND_CENTRE, cc, params, retries=6)
        with pytest.raises(InvalidArgument):
            SessionState(Role.COMMAND_CENTRE, cc, params, session_id=1 << 64)
        SessionState(Role.COMMAND_CENTRE, cc, params, phase=Phase.CLOSED)
