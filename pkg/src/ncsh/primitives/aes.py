"""AES-128 block operations.

The S-box is not a literal table: it is derived from the GF(2^8) inverse and
the affine map when the kernel tables are first imported.
"""
from .. import _kernels
from .._kernels.tables import INV_SBOX, SBOX
from ..errors import InvalidArgument

BLOCK = 16
KEY_OCTETS = 16

__all__ = ["SBOX", "INV_SBOX", "aes128_encrypt_block", "aes128_decrypt_block", "expand_key"]


def _need(name, value, size):
    if len(value) != size:
        raise InvalidArgument(f"{name} must be {size} octets, got {len(value)}")


def expand_key(key: bytes):
    _need("AES key", key, KEY_OCTETS)
    return _kernels.aes_expand_key(bytes(key))


def aes128_encrypt_block(key: bytes, block: bytes) -> bytes:
    _need("AES block", block, BLOCK)
    return _kernels.aes_encrypt_block(expand_key(key), bytes(block))


def aes128_decrypt_block(key: bytes, block: bytes) -> bytes:
    _need("AES block", block, BLOCK)
    return _kernels.aes_decrypt_block(expand_key(key), bytes(block))
