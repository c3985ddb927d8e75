"""Session keys and CBC/PKCS#7 for the AES and DES suites."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .. import _kernels, instrument
from ..errors import CorruptCiphertext, InvalidArgument


class CipherSuite(enum.IntEnum):
    AES = 1
    DES = 2
    RSA = 3


BLOCK_OCTETS = {CipherSuite.AES: 16, CipherSuite.DES: 8}
KEY_OCTETS = {CipherSuite.AES: 16, CipherSuite.DES: 8, CipherSuite.RSA: 0}
# expanded key schedule sizes, for buffer accounting
_SCHEDULE_OCTETS = {CipherSuite.AES: 176, CipherSuite.DES: 128}


@dataclass(frozen=True)
class SymmetricKey:
    bytes: bytes
    suite: CipherSuite

    def __post_init__(self):
        if self.suite not in BLOCK_OCTETS:
            raise InvalidArgument(f"{self.suite.name} has no symmetric key")
        if len(self.bytes) != KEY_OCTETS[self.suite]:
            raise InvalidArgument(
                f"{self.suite.name} key must be {KEY_OCTETS[self.suite]} octets, got {len(self.bytes)}"
            )

    @classmethod
    def generate(cls, suite: CipherSuite, rng) -> SymmetricKey:
        return cls(random_bytes(rng, KEY_OCTETS[suite]), suite)


def random_bytes(rng, n: int) -> bytes:
    return rng.getrandbits(8 * n).to_bytes(n, "big") if n else b""


def _schedule(key: SymmetricKey):
    if key.suite is CipherSuite.AES:
        return _kernels.aes_expand_key(key.bytes), _kernels.aes_cbc_encrypt, _kernels.aes_cbc_decrypt
    return _kernels.des_key_schedule(key.bytes), _kernels.des_cbc_encrypt, _kernels.des_cbc_decrypt


def _check_suite(suite, key, iv):
    if suite not in BLOCK_OCTETS:
        raise InvalidArgument(f"{CipherSuite(suite).name} is not a block-cipher suite")
    if key.suite != suite:
        raise InvalidArgument(f"{key.suite.name} key used with {suite.name}")
    if len(iv) != BLOCK_OCTETS[suite]:
        raise InvalidArgument(f"IV must be {BLOCK_OCTETS[suite]} octets, got {len(iv)}")


def pkcs7_pad(data: bytes, block: int) -> bytes:
    n = block - len(data) % block
    return data + bytes([n]) * n


def cbc_seal(suite: CipherSuite, key: SymmetricKey, iv: bytes, plaintext: bytes) -> bytes:
    _check_suite(suite, key, iv)
    bs = BLOCK_OCTETS[suite]
    padded = pkcs7_pad(bytes(plaintext), bs)
    meter = instrument.active()
    if meter is not None:
        transient = len(padded) + _SCHEDULE_OCTETS[suite]
        meter.hold(transient + len(padded))
    sched, encrypt, _ = _schedule(key)
    ct = encrypt(sched, bytes(iv), padded)
    if meter is not None:
        meter.release(transient)
    return ct


def cbc_open(suite: CipherSuite, key: SymmetricKey, iv: bytes, ciphertext: bytes) -> bytes:
    _check_suite(suite, key, iv)
    bs = BLOCK_OCTETS[suite]
    if not ciphertext or len(ciphertext) % bs:
        raise CorruptCiphertext("corrupt ciphertext")
    sched, _, decrypt = _schedule(key)
    padded = decrypt(sched, bytes(iv), bytes(ciphertext))
    n = padded[-1]
    if not 1 <= n <= bs or padded[-n:] != bytes([n]) * n:
        raise CorruptCiphertext("corrupt ciphertext")
    return padded[:-n]
