"""Signing in the two modes, plus the RSA multiplicative-homomorphism check.

Literal mode applies the signer's private exponent straight to the
recipient-encrypted blocks, so ``E_A(D_A(E_B(M))) = E_B(M)`` and the
recipient finishes with ``D_B``.  Digest mode signs the SHA-1 of the
serialized ciphertext instead and works for any pair of moduli.
"""
from __future__ import annotations

from ..errors import BlockTooLarge, CorruptSignature, IncompatibleModuli
from ..primitives.rsa import RsaKeyPair, rsa_apply
from ..primitives.sha1 import sha1


def sign_literal(signer: RsaKeyPair, ct_blocks, recipient_n: int) -> list[int]:
    if signer.n <= recipient_n:
        raise IncompatibleModuli(
            "literal signing needs the signer modulus to exceed the recipient modulus"
        )
    return [rsa_apply(signer.d, signer.n, c) for c in ct_blocks]


def verify_literal(signer_public: tuple[int, int], m1_blocks) -> list[int]:
    e, n = signer_public
    try:
        return [rsa_apply(e, n, b) for b in m1_blocks]
    except BlockTooLarge:
        raise CorruptSignature("signature block out of range") from None


def _digest_int(data: bytes, n: int) -> int:
    # only toy moduli are smaller than a SHA-1 digest
    return int.from_bytes(sha1(data), "big") % n


def sign_digest(signer: RsaKeyPair, ciphertext: bytes) -> list[int]:
    return [rsa_apply(signer.d, signer.n, _digest_int(ciphertext, signer.n))]


def verify_digest(signer_public: tuple[int, int], ciphertext: bytes, sig) -> bool:
    e, n = signer_public
    sig = list(sig)
    if len(sig) != 1 or not 0 <= sig[0] < n:
        return False
    return rsa_apply(e, n, sig[0]) == _digest_int(ciphertext, n)


def homomorphic_product_check(pub: tuple[int, int], x: int, y: int) -> bool:
    """E(x) * E(y) == E(x * y) (mod n) for textbook RSA."""
    e, n = pub
    return rsa_apply(e, n, x) * rsa_apply(e, n, y) % n == rsa_apply(e, n, x * y % n)
