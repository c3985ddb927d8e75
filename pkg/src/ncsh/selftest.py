"""Quick known-answer and round-trip checks for the installed build."""
from __future__ import annotations

import random

from . import _kernels
from .ffmath import gf256_inv, gf256_mul, mod_inv, mod_pow
from .handshake import SecurityLevel, calibrate
from .handshake.signature import sign_literal, verify_literal
from .netio.peers import simulate_session
from .primitives import aes, des
from .primitives.rsa import keypair_from_primes, rsa_apply, rsa_keygen
from .primitives.sha1 import sha1
from .primitives.symmetric import CipherSuite

AES_ZERO = "66e94bd4ef8a2c3b884cfa59ca342b2e"
DES_KEY, DES_PT, DES_CT = "133457799bbcdff1", "0123456789abcdef", "85e813540f0ab405"
SHA1_EMPTY = "da39a3ee5e6b4b0d3255bfef95601890afd80709"
SHA1_ABC = "a9993e364706816aba3e25717850c26c9cd0d89d"


def _aes():
    ct = aes.aes128_encrypt_block(bytes(16), bytes(16))
    return ct.hex() == AES_ZERO and aes.aes128_decrypt_block(bytes(16), ct) == bytes(16)


def _des():
    key = bytes.fromhex(DES_KEY)
    ct = des.des_encrypt_block(key, bytes.fromhex(DES_PT))
    return ct.hex() == DES_CT and des.des_decrypt_block(key, ct).hex() == DES_PT


def _sha1():
    return sha1(b"").hex() == SHA1_EMPTY and sha1(b"abc").hex() == SHA1_ABC


def _field():
    ok = all(a * mod_inv(a, 251) % 251 == 1 for a in range(1, 251))
    ok &= all(gf256_mul(a, gf256_inv(a)) == 1 for a in range(1, 256))
    return ok and mod_pow(7, 560, 561) == pow(7, 560, 561)


def _demo_chain():
    bob = keypair_from_primes(5, 11)
    alice = keypair_from_primes(5, 17)
    c = rsa_apply(bob.e, bob.n, 2)
    m1 = sign_literal(alice, [c], bob.n)
    back = verify_literal(alice.public, m1)
    return (bob.e, bob.d, alice.d, c) == (3, 27, 43, 8) and rsa_apply(bob.d, bob.n, back[0]) == 2


def _sessions():
    rng = random.Random(7)
    cc, st = rsa_keygen(512, rng), rsa_keygen(512, rng)
    for suite in CipherSuite:
        out, target = simulate_session(1, cc, st, calibrate(SecurityLevel.L1, suite), b"selftest", drop_rate=0.2)
        if not out.ok or target.completed[-1].plaintext != b"selftest":
            return False
    return True


def _backends():
    impls = _kernels.backends()
    if len(impls) < 2:
        return True
    data = bytes(range(256)) * 4
    iv, key = bytes(16), bytes(range(16))
    outs = set()
    for mod in impls.values():
        ks = mod.aes_expand_key(key)
        outs.add((mod.aes_cbc_encrypt(ks, iv, data), mod.sha1_compress((1, 2, 3, 4, 5), data[:64])))
    return len(outs) == 1


CHECKS = [
    ("aes-128 known answer", _aes),
    ("des known answer", _des),
    ("sha-1 known answers", _sha1),
    ("field inverses", _field),
    ("demo key chain", _demo_chain),
    ("kernel backends agree", _backends),
    ("simulated sessions, all suites", _sessions),
]


def run(report=print) -> bool:
    ok = True
    report(f"kernel backend: {_kernels.BACKEND}")
    for name, check in CHECKS:
        try:
            passed = bool(check())
        except Exception as exc:  # a crash is a failure, not an abort
            passed = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        ok &= passed
        report(f"{'ok  ' if passed else 'FAIL'} {name}")
    return ok
