"""Lookup tables consumed by both kernel backends.

The AES S-box is derived at import from the GF(2^8) inverse plus the affine
map; the T-tables are built from it.  DES uses the standard FIPS 46-3
permutation and substitution constants, from which byte-sliced permutation
tables and combined S-box/P-permutation tables are precomputed.
"""
from ..ffmath import gf256_inv, gf256_mul


def _rotl8(x, s):
    return ((x << s) | (x >> (8 - s))) & 0xFF


def _affine(b):
    return b ^ _rotl8(b, 1) ^ _rotl8(b, 2) ^ _rotl8(b, 3) ^ _rotl8(b, 4) ^ 0x63


SBOX = bytes(_affine(gf256_inv(x) if x else 0) for x in range(256))
INV_SBOX = bytes(SBOX.index(y) for y in range(256))


def _pack(a, b, c, d):
    return (a << 24) | (b << 16) | (c << 8) | d


def _ror32(x, s):
    return ((x >> s) | (x << (32 - s))) & 0xFFFFFFFF


TE0 = []
TD0 = []
for _x in range(256):
    _s = SBOX[_x]
    TE0.append(_pack(gf256_mul(_s, 2), _s, _s, gf256_mul(_s, 3)))
    _i = INV_SBOX[_x]
    TD0.append(_pack(gf256_mul(_i, 14), gf256_mul(_i, 9), gf256_mul(_i, 13), gf256_mul(_i, 11)))
TE1 = [_ror32(w, 8) for w in TE0]
TE2 = [_ror32(w, 16) for w in TE0]
TE3 = [_ror32(w, 24) for w in TE0]
TD1 = [_ror32(w, 8) for w in TD0]
TD2 = [_ror32(w, 16) for w in TD0]
TD3 = [_ror32(w, 24) for w in TD0]

RCON = [0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80, 0x1B, 0x36]


# --- DES -------------------------------------------------------------------

IP = [
    58, 50, 42, 34, 26, 18, 10, 2, 60, 52, 44, 36, 28, 20, 12, 4,
    62, 54, 46, 38, 30, 22, 14, 6, 64, 56, 48, 40, 32, 24, 16, 8,
    57, 49, 41, 33, 25, 17, 9, 1, 59, 51, 43, 35, 27, 19, 11, 3,
    61, 53, 45, 37, 29, 21, 13, 5, 63, 55, 47, 39, 31, 23, 15, 7,
]
FP = [IP.index(i) + 1 for i in range(1, 65)]

P = [
    16, 7, 20, 21, 29, 12, 28, 17, 1, 15, 23, 26, 5, 18, 31, 10,
    2, 8, 24, 14, 32, 27, 3, 9, 19, 13, 30, 6, 22, 11, 4, 25,
]

PC1 = [
    57, 49, 41, 33, 25, 17, 9, 1, 58, 50, 42, 34, 26, 18,
    10, 2, 59, 51, 43, 35, 27, 19, 11, 3, 60, 52, 44, 36,
    63, 55, 47, 39, 31, 23, 15, 7, 62, 54, 46, 38, 30, 22,
    14, 6, 61, 53, 45, 37, 29, 21, 13, 5, 28, 20, 12, 4,
]

PC2 = [
    14, 17, 11, 24, 1, 5, 3, 28, 15, 6, 21, 10,
    23, 19, 12, 4, 26, 8, 16, 7, 27, 20, 13, 2,
    41, 52, 31, 37, 47, 55, 30, 40, 51, 45, 33, 48,
    44, 49, 39, 56, 34, 53, 46, 42, 50, 36, 29, 32,
]

SHIFTS = [1, 1, 2, 2, 2, 2, 2, 2, 1, 2, 2, 2, 2, 2, 2, 1]

SBOXES = [
    [14, 4, 13, 1, 2, 15, 11, 8, 3, 10, 6, 12, 5, 9, 0, 7,
     0, 15, 7, 4, 14, 2, 13, 1, 10, 6, 12, 11, 9, 5, 3, 8,
     4, 1, 14, 8, 13, 6, 2, 11, 15, 12, 9, 7, 3, 10, 5, 0,
     15, 12, 8, 2, 4, 9, 1, 7, 5, 11, 3, 14, 10, 0, 6, 13],
    [15, 1, 8, 14, 6, 11, 3, 4, 9, 7, 2, 13, 12, 0, 5, 10,
     3, 13, 4, 7, 15, 2, 8, 14, 12, 0, 1, 10, 6, 9, 11, 5,
     0, 14, 7, 11, 10, 4, 13, 1, 5, 8, 12, 6, 9, 3, 2, 15,
     13, 8, 10, 1, 3, 15, 4, 2, 11, 6, 7, 12, 0, 5, 14, 9],
    [10, 0, 9, 14, 6, 3, 15, 5, 1, 13, 12, 7, 11, 4, 2, 8,
     13, 7, 0, 9, 3, 4, 6, 10, 2, 8, 5, 14, 12, 11, 15, 1,
     13, 6, 4, 9, 8, 15, 3, 0, 11, 1, 2, 12, 5, 10, 14, 7,
     1, 10, 13, 0, 6, 9, 8, 7, 4, 15, 14, 3, 11, 5, 2, 12],
    [7, 13, 14, 3, 0, 6, 9, 10, 1, 2, 8, 5, 11, 12, 4, 15,
     13, 8, 11, 5, 6, 15, 0, 3, 4, 7, 2, 12, 1, 10, 14, 9,
     10, 6, 9, 0, 12, 11, 7, 13, 15, 1, 3, 14, 5, 2, 8, 4,
     3, 15, 0, 6, 10, 1, 13, 8, 9, 4, 5, 11, 12, 7, 2, 14],
    [2, 12, 4, 1, 7, 10, 11, 6, 8, 5, 3, 15, 13, 0, 14, 9,
     14, 11, 2, 12, 4, 7, 13, 1, 5, 0, 15, 10, 3, 9, 8, 6,
     4, 2, 1, 11, 10, 13, 7, 8, 15, 9, 12, 5, 6, 3, 0, 14,
     11, 8, 12, 7, 1, 14, 2, 13, 6, 15, 0, 9, 10, 4, 5, 3],
    [12, 1, 10, 15, 9, 2, 6, 8, 0, 13, 3, 4, 14, 7, 5, 11,
     10, 15, 4, 2, 7, 12, 9, 5, 6, 1, 13, 14, 0, 11, 3, 8,
     9, 14, 15, 5, 2, 8, 12, 3, 7, 0, 4, 10, 1, 13, 11, 6,
     4, 3, 2, 12, 9, 5, 15, 10, 11, 14, 1, 7, 6, 0, 8, 13],
    [4, 11, 2, 14, 15, 0, 8, 13, 3, 12, 9, 7, 5, 10, 6, 1,
     13, 0, 11, 7, 4, 9, 1, 10, 14, 3, 5, 12, 2, 15, 8, 6,
     1, 4, 11, 13, 12, 3, 7, 14, 10, 15, 6, 8, 0, 5, 9, 2,
     6, 11, 13, 8, 1, 4, 10, 7, 9, 5, 0, 15, 14, 2, 3, 12],
    [13, 2, 8, 4, 6, 15, 11, 1, 10, 9, 3, 14, 5, 0, 12, 7,
     1, 15, 13, 8, 10, 3, 7, 4, 12, 5, 6, 11, 0, 14, 9, 2,
     7, 11, 4, 1, 9, 12, 14, 2, 0, 6, 10, 13, 15, 3, 5, 8,
     2, 1, 14, 7, 4, 10, 8, 13, 15, 12, 9, 0, 3, 5, 6, 11],
]


def permute(x, table, in_bits):
    """Apply a 1-indexed, MSB-first bit-selection table."""
    out = 0
    for pos in table:
        out = (out << 1) | ((x >> (in_bits - pos)) & 1)
    return out


def _byte_sliced(table, in_bits):
    nbytes = in_bits // 8
    return [
        [permute(v << (in_bits - 8 * (i + 1)), table, in_bits) for v in range(256)]
        for i in range(nbytes)
    ]


IP_BYTES = _byte_sliced(IP, 64)
FP_BYTES = _byte_sliced(FP, 64)
PC1_BYTES = _byte_sliced(PC1, 64)
# PC2 acts on 56 bits = 7 bytes
PC2_BYTES = _byte_sliced(PC2, 56)


def _sp_table(j):
    box = SBOXES[j]
    out = []
    for six in range(64):
        row = ((six >> 4) & 2) | (six & 1)
        col = (six >> 1) & 0xF
        out.append(permute(box[row * 16 + col] << (28 - 4 * j), P, 32))
    return out


SP = [_sp_table(j) for j in range(8)]

del _x, _s, _i
