"""SHA-1 with standard length padding over the compression kernel."""
from .. import _kernels

DIGEST_OCTETS = 20
_IV = (0x67452301, 0xEFCDAB89, 0x98BADCFE, 0x10325476, 0xC3D2E1F0)


def pad(data: bytes) -> bytes:
    bitlen = 8 * len(data)
    return data + b"\x80" + b"\x00" * ((55 - len(data)) % 64) + bitlen.to_bytes(8, "big")


def sha1(data: bytes) -> bytes:
    h = _kernels.sha1_compress(_IV, pad(bytes(data)))
    return b"".join(w.to_bytes(4, "big") for w in h)
