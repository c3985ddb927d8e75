"""Hot kernels: AES-128, DES and SHA-1 compression.

The compiled ``_fast`` extension is used when it imports; otherwise the
pure-Python ``_pure`` module with the identical surface.  Setting
``NCSH_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _pure

if os.environ.get("NCSH_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pure
else:
    try:
        from . import _fast as _impl
    except ImportError:
        _impl = _pure

BACKEND = "compiled" if _impl is not _pure else "pure"

aes_expand_key = _impl.aes_expand_key
aes_encrypt_block = _impl.aes_encrypt_block
aes_decrypt_block = _impl.aes_decrypt_block
aes_cbc_encrypt = _impl.aes_cbc_encrypt
aes_cbc_decrypt = _impl.aes_cbc_decrypt
des_key_schedule = _impl.des_key_schedule
des_encrypt_block = _impl.des_encrypt_block
des_decrypt_block = _impl.des_decrypt_block
des_cbc_encrypt = _impl.des_cbc_encrypt
des_cbc_decrypt = _impl.des_cbc_decrypt
sha1_compress = _impl.sha1_compress


def backends():
    """Every importable backend module, keyed by name."""
    found = {"pure": _pure}
    try:
        from . import _fast

        found["compiled"] = _fast
    except ImportError:
        pass
    return found
