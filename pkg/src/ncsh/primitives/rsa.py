"""Textbook RSA: key generation, the raw exponentiation primitive, and a
length-framed blockwise mode for arbitrary octet strings.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

from .. import instrument
from ..errors import (
    BlockTooLarge,
    CorruptCiphertext,
    InvalidArgument,
    KeygenFailure,
    NotInvertible,
)
from ..ffmath import gen_prime, mod_inv, mod_pow

E_CANDIDATES = (65537, 3, 5, 17)
KEYGEN_ATTEMPTS = 16
DEMO_BITS = 32


class SecurityLevel(enum.Enum):
    L1 = "L1"
    L2 = "L2"
    L3 = "L3"

    @property
    def modulus_bits(self) -> int:
        return LEVEL_BITS[self]


LEVEL_BITS = {SecurityLevel.L1: 512, SecurityLevel.L2: 1024, SecurityLevel.L3: 2048}
_BITS_LEVEL = {v: k for k, v in LEVEL_BITS.items()}


class PublicKey(NamedTuple):
    e: int
    n: int


class PrivateKey(NamedTuple):
    d: int
    n: int


@dataclass(frozen=True)
class RsaKeyPair:
    n: int
    e: int
    d: int
    modulus_bits: int
    level: SecurityLevel | None = None

    @property
    def public(self) -> PublicKey:
        return PublicKey(self.e, self.n)

    @property
    def private(self) -> PrivateKey:
        return PrivateKey(self.d, self.n)

    def __repr__(self):
        level = self.level.value if self.level else "demo"
        return f"RsaKeyPair({self.modulus_bits} bits, {level}, e={self.e})"


def keypair_from_primes(p: int, q: int, level: SecurityLevel | None = None) -> RsaKeyPair:
    """Build a key pair from chosen primes, trying exponents in preference order."""
    if p == q:
        raise InvalidArgument("p and q must differ")
    n = p * q
    phi = (p - 1) * (q - 1)
    for e in E_CANDIDATES:
        if not 1 < e < phi:
            continue
        try:
            d = mod_inv(e, phi)
        except NotInvertible:
            continue
        return RsaKeyPair(n=n, e=e, d=d, modulus_bits=n.bit_length(), level=level)
    raise NotInvertible(f"no public exponent in {E_CANDIDATES} is invertible mod phi")


def rsa_keygen(modulus_bits: int, rng, demo: bool = False) -> RsaKeyPair:
    if modulus_bits not in _BITS_LEVEL and not (demo and modulus_bits == DEMO_BITS):
        raise InvalidArgument(f"unsupported modulus size {modulus_bits}")
    half = modulus_bits // 2
    for _ in range(KEYGEN_ATTEMPTS):
        # two top bits set: p * q >= 2.25 * 2^(bits-2), never a bit short
        p = gen_prime(half, rng, top_bits=2)
        q = gen_prime(half, rng, top_bits=2)
        while q == p:
            q = gen_prime(half, rng, top_bits=2)
        try:
            return keypair_from_primes(p, q, _BITS_LEVEL.get(modulus_bits))
        except NotInvertible:
            continue
    raise KeygenFailure(f"no usable exponent after {KEYGEN_ATTEMPTS} prime pairs")


def rsa_apply(exponent: int, n: int, block: int) -> int:
    """E and D are both this map, with the public or private exponent."""
    if not 0 <= block < n:
        raise BlockTooLarge(f"block must lie in [0, n), n has {n.bit_length()} bits")
    return mod_pow(block, exponent, n)


def chunk_octets(n: int) -> int:
    """Payload octets per block; 0 selects the headerless single-octet mode
    used by toy moduli too small to carry a length header."""
    bits = n.bit_length()
    return (bits - 16) // 8 if bits >= 24 else 0


def modulus_octets(n: int) -> int:
    return (n.bit_length() + 7) // 8


def rsa_encrypt_blockwise(pub: tuple[int, int], data: bytes) -> list[int]:
    e, n = pub
    data = bytes(data)
    size = chunk_octets(n)
    if size == 0:
        framed = list(data)
    else:
        framed = [
            int.from_bytes(len(c).to_bytes(2, "big") + c, "big")
            for c in (data[i:i + size] for i in range(0, len(data), size))
        ]
    meter = instrument.active()
    if meter is not None:
        meter.hold(2 * len(framed) * modulus_octets(n))
    out = [rsa_apply(e, n, m) for m in framed]
    if meter is not None:
        meter.release(len(framed) * modulus_octets(n))
    return out


def _unframe(m: int, size: int) -> bytes:
    nbytes = (m.bit_length() + 7) // 8
    for length in (nbytes - 1, nbytes - 2):
        if 1 <= length <= size and m >> (8 * length) == length:
            return (m & ((1 << (8 * length)) - 1)).to_bytes(length, "big")
    raise CorruptCiphertext("malformed RSA block framing")


def rsa_decrypt_blockwise(priv: tuple[int, int], blocks) -> bytes:
    d, n = priv
    size = chunk_octets(n)
    out = bytearray()
    for c in blocks:
        if not 0 <= c < n:
            raise CorruptCiphertext("RSA block out of range")
        m = mod_pow(c, d, n)
        if size == 0:
            if m > 0xFF:
                raise CorruptCiphertext("malformed RSA block framing")
            out.append(m)
        else:
            out += _unframe(m, size)
    return bytes(out)


def blocks_to_octets(blocks, n: int) -> bytes:
    """Fixed-width big-endian concatenation, one modulus width per block."""
    k = modulus_octets(n)
    return b"".join(b.to_bytes(k, "big") for b in blocks)


def octets_to_blocks(data: bytes, n: int) -> list[int]:
    k = modulus_octets(n)
    if len(data) % k:
        raise CorruptCiphertext("ciphertext is not a whole number of RSA blocks")
    return [int.from_bytes(data[i:i + k], "big") for i in range(0, len(data), k)]
