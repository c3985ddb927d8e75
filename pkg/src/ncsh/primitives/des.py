"""Single DES.  The eight parity bits of the key are dropped by PC-1."""
from .. import _kernels
from ..errors import InvalidArgument

BLOCK = 8
KEY_OCTETS = 8


def _need(name, value, size):
    if len(value) != size:
        raise InvalidArgument(f"{name} must be {size} octets, got {len(value)}")


def key_schedule(key: bytes):
    _need("DES key", key, KEY_OCTETS)
    return _kernels.des_key_schedule(bytes(key))


def des_encrypt_block(key: bytes, block: bytes) -> bytes:
    _need("DES block", block, BLOCK)
    return _kernels.des_encrypt_block(key_schedule(key), bytes(block))


def des_decrypt_block(key: bytes, block: bytes) -> bytes:
    _need("DES block", block, BLOCK)
    return _kernels.des_decrypt_block(key_schedule(key), bytes(block))
