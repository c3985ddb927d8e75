"""RSA, AES-128, DES and SHA-1 built on the finite-field core."""
from .aes import INV_SBOX, SBOX, aes128_decrypt_block, aes128_encrypt_block
from .des import des_decrypt_block, des_encrypt_block
from .rsa import (
    PrivateKey,
    PublicKey,
    RsaKeyPair,
    SecurityLevel,
    keypair_from_primes,
    rsa_apply,
    rsa_decrypt_blockwise,
    rsa_encrypt_blockwise,
    rsa_keygen,
)
from .sha1 import sha1
from .symmetric import CipherSuite, SymmetricKey, cbc_open, cbc_seal

__all__ = [
    "INV_SBOX",
    "SBOX",
    "CipherSuite",
    "PrivateKey",
    "PublicKey",
    "RsaKeyPair",
    "SecurityLevel",
    "SymmetricKey",
    "aes128_decrypt_block",
    "aes128_encrypt_block",
    "cbc_open",
    "cbc_seal",
    "des_decrypt_block",
    "des_encrypt_block",
    "keypair_from_primes",
    "rsa_apply",
    "rsa_decrypt_blockwise",
    "rsa_encrypt_blockwise",
    "rsa_keygen",
    "sha1",
]
