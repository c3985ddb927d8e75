"""Pure-Python block cipher and hash kernels.

Same surface as the compiled ``_fast`` module.  Callers validate lengths;
these functions assume whole blocks.
"""
from . import tables as T

_M32 = 0xFFFFFFFF

_S = T.SBOX
_SI = T.INV_SBOX
_TE0, _TE1, _TE2, _TE3 = T.TE0, T.TE1, T.TE2, T.TE3
_TD0, _TD1, _TD2, _TD3 = T.TD0, T.TD1, T.TD2, T.TD3


# --- AES-128 ---------------------------------------------------------------

class AesSchedule:
    __slots__ = ("ek", "dk")

    def __init__(self, ek, dk):
        self.ek = ek
        self.dk = dk


def _sub_word(w):
    return (_S[w >> 24] << 24) | (_S[(w >> 16) & 0xFF] << 16) | (_S[(w >> 8) & 0xFF] << 8) | _S[w & 0xFF]


def aes_expand_key(key):
    ek = [int.from_bytes(key[4 * i:4 * i + 4], "big") for i in range(4)]
    for i in range(4, 44):
        t = ek[i - 1]
        if i % 4 == 0:
            t = _sub_word(((t << 8) | (t >> 24)) & _M32) ^ (T.RCON[i // 4 - 1] << 24)
        ek.append(ek[i - 4] ^ t)

    dk = []
    for r in range(10, -1, -1):
        words = ek[4 * r:4 * r + 4]
        if 0 < r < 10:
            words = [
                _TD0[_S[w >> 24]] ^ _TD1[_S[(w >> 16) & 0xFF]]
                ^ _TD2[_S[(w >> 8) & 0xFF]] ^ _TD3[_S[w & 0xFF]]
                for w in words
            ]
        dk.extend(words)
    return AesSchedule(tuple(ek), tuple(dk))


def _aes_enc(rk, s0, s1, s2, s3):
    s0 ^= rk[0]
    s1 ^= rk[1]
    s2 ^= rk[2]
    s3 ^= rk[3]
    for r in range(4, 40, 4):
        t0 = _TE0[s0 >> 24] ^ _TE1[(s1 >> 16) & 0xFF] ^ _TE2[(s2 >> 8) & 0xFF] ^ _TE3[s3 & 0xFF] ^ rk[r]
        t1 = _TE0[s1 >> 24] ^ _TE1[(s2 >> 16) & 0xFF] ^ _TE2[(s3 >> 8) & 0xFF] ^ _TE3[s0 & 0xFF] ^ rk[r + 1]
        t2 = _TE0[s2 >> 24] ^ _TE1[(s3 >> 16) & 0xFF] ^ _TE2[(s0 >> 8) & 0xFF] ^ _TE3[s1 & 0xFF] ^ rk[r + 2]
        t3 = _TE0[s3 >> 24] ^ _TE1[(s0 >> 16) & 0xFF] ^ _TE2[(s1 >> 8) & 0xFF] ^ _TE3[s2 & 0xFF] ^ rk[r + 3]
        s0, s1, s2, s3 = t0, t1, t2, t3
    return (
        ((_S[s0 >> 24] << 24) | (_S[(s1 >> 16) & 0xFF] << 16) | (_S[(s2 >> 8) & 0xFF] << 8) | _S[s3 & 0xFF]) ^ rk[40],
        ((_S[s1 >> 24] << 24) | (_S[(s2 >> 16) & 0xFF] << 16) | (_S[(s3 >> 8) & 0xFF] << 8) | _S[s0 & 0xFF]) ^ rk[41],
        ((_S[s2 >> 24] << 24) | (_S[(s3 >> 16) & 0xFF] << 16) | (_S[(s0 >> 8) & 0xFF] << 8) | _S[s1 & 0xFF]) ^ rk[42],
        ((_S[s3 >> 24] << 24) | (_S[(s0 >> 16) & 0xFF] << 16) | (_S[(s1 >> 8) & 0xFF] << 8) | _S[s2 & 0xFF]) ^ rk[43],
    )


def _aes_dec(rk, s0, s1, s2, s3):
    s0 ^= rk[0]
    s1 ^= rk[1]
    s2 ^= rk[2]
    s3 ^= rk[3]
    for r in range(4, 40, 4):
        t0 = _TD0[s0 >> 24] ^ _TD1[(s3 >> 16) & 0xFF] ^ _TD2[(s2 >> 8) & 0xFF] ^ _TD3[s1 & 0xFF] ^ rk[r]
        t1 = _TD0[s1 >> 24] ^ _TD1[(s0 >> 16) & 0xFF] ^ _TD2[(s3 >> 8) & 0xFF] ^ _TD3[s2 & 0xFF] ^ rk[r + 1]
        t2 = _TD0[s2 >> 24] ^ _TD1[(s1 >> 16) & 0xFF] ^ _TD2[(s0 >> 8) & 0xFF] ^ _TD3[s3 & 0xFF] ^ rk[r + 2]
        t3 = _TD0[s3 >> 24] ^ _TD1[(s2 >> 16) & 0xFF] ^ _TD2[(s1 >> 8) & 0xFF] ^ _TD3[s0 & 0xFF] ^ rk[r + 3]
        s0, s1, s2, s3 = t0, t1, t2, t3
    return (
        ((_SI[s0 >> 24] << 24) | (_SI[(s3 >> 16) & 0xFF] << 16) | (_SI[(s2 >> 8) & 0xFF] << 8) | _SI[s1 & 0xFF]) ^ rk[40],
        ((_SI[s1 >> 24] << 24) | (_SI[(s0 >> 16) & 0xFF] << 16) | (_SI[(s3 >> 8) & 0xFF] << 8) | _SI[s2 & 0xFF]) ^ rk[41],
        ((_SI[s2 >> 24] << 24) | (_SI[(s1 >> 16) & 0xFF] << 16) | (_SI[(s0 >> 8) & 0xFF] << 8) | _SI[s3 & 0xFF]) ^ rk[42],
        ((_SI[s3 >> 24] << 24) | (_SI[(s2 >> 16) & 0xFF] << 16) | (_SI[(s1 >> 8) & 0xFF] << 8) | _SI[s0 & 0xFF]) ^ rk[43],
    )


def _words(block):
    x = int.from_bytes(block, "big")
    return (x >> 96) & _M32, (x >> 64) & _M32, (x >> 32) & _M32, x & _M32


def _join(w):
    return ((w[0] << 96) | (w[1] << 64) | (w[2] << 32) | w[3]).to_bytes(16, "big")


def aes_encrypt_block(sched, block):
    return _join(_aes_enc(sched.ek, *_words(block)))


def aes_decrypt_block(sched, block):
    return _join(_aes_dec(sched.dk, *_words(block)))


def aes_cbc_encrypt(sched, iv, data):
    rk = sched.ek
    out = bytearray(len(data))
    prev = int.from_bytes(iv, "big")
    for off in range(0, len(data), 16):
        x = int.from_bytes(data[off:off + 16], "big") ^ prev
        w = _aes_enc(rk, x >> 96, (x >> 64) & _M32, (x >> 32) & _M32, x & _M32)
        prev = (w[0] << 96) | (w[1] << 64) | (w[2] << 32) | w[3]
        out[off:off + 16] = prev.to_bytes(16, "big")
    return bytes(out)


def aes_cbc_decrypt(sched, iv, data):
    rk = sched.dk
    out = bytearray(len(data))
    prev = int.from_bytes(iv, "big")
    for off in range(0, len(data), 16):
        c = int.from_bytes(data[off:off + 16], "big")
        w = _aes_dec(rk, c >> 96, (c >> 64) & _M32, (c >> 32) & _M32, c & _M32)
        x = ((w[0] << 96) | (w[1] << 64) | (w[2] << 32) | w[3]) ^ prev
        out[off:off + 16] = x.to_bytes(16, "big")
        prev = c
    return bytes(out)


# --- DES -------------------------------------------------------------------

_IPB = T.IP_BYTES
_FPB = T.FP_BYTES
_SP0, _SP1, _SP2, _SP3, _SP4, _SP5, _SP6, _SP7 = T.SP


def _perm64(x, tab):
    return (
        tab[0][x >> 56] | tab[1][(x >> 48) & 0xFF] | tab[2][(x >> 40) & 0xFF] | tab[3][(x >> 32) & 0xFF]
        | tab[4][(x >> 24) & 0xFF] | tab[5][(x >> 16) & 0xFF] | tab[6][(x >> 8) & 0xFF] | tab[7][x & 0xFF]
    )


def des_key_schedule(key):
    k = int.from_bytes(key, "big")
    cd = _perm64(k, T.PC1_BYTES)
    c, d = cd >> 28, cd & 0xFFFFFFF
    subkeys = []
    pc2 = T.PC2_BYTES
    for s in T.SHIFTS:
        c = ((c << s) | (c >> (28 - s))) & 0xFFFFFFF
        d = ((d << s) | (d >> (28 - s))) & 0xFFFFFFF
        x = (c << 28) | d
        subkeys.append(
            pc2[0][x >> 48] | pc2[1][(x >> 40) & 0xFF] | pc2[2][(x >> 32) & 0xFF] | pc2[3][(x >> 24) & 0xFF]
            | pc2[4][(x >> 16) & 0xFF] | pc2[5][(x >> 8) & 0xFF] | pc2[6][x & 0xFF]
        )
    return tuple(subkeys)


def _des(subkeys, x):
    x = _perm64(x, _IPB)
    left, right = x >> 32, x & _M32
    for k in subkeys:
        e = ((right & 1) << 33) | (right << 1) | (right >> 31)
        f = (
            _SP0[((e >> 28) ^ (k >> 42)) & 0x3F]
            | _SP1[((e >> 24) ^ (k >> 36)) & 0x3F]
            | _SP2[((e >> 20) ^ (k >> 30)) & 0x3F]
            | _SP3[((e >> 16) ^ (k >> 24)) & 0x3F]
            | _SP4[((e >> 12) ^ (k >> 18)) & 0x3F]
            | _SP5[((e >> 8) ^ (k >> 12)) & 0x3F]
            | _SP6[((e >> 4) ^ (k >> 6)) & 0x3F]
            | _SP7[(e ^ k) & 0x3F]
        )
        left, right = right, left ^ f
    return _perm64((right << 32) | left, _FPB)


def des_encrypt_block(sched, block):
    return _des(sched, int.from_bytes(block, "big")).to_bytes(8, "big")


def des_decrypt_block(sched, block):
    return _des(sched[::-1], int.from_bytes(block, "big")).to_bytes(8, "big")


def des_cbc_encrypt(sched, iv, data):
    out = bytearray(len(data))
    prev = int.from_bytes(iv, "big")
    for off in range(0, len(data), 8):
        prev = _des(sched, int.from_bytes(data[off:off + 8], "big") ^ prev)
        out[off:off + 8] = prev.to_bytes(8, "big")
    return bytes(out)


def des_cbc_decrypt(sched, iv, data):
    rev = sched[::-1]
    out = bytearray(len(data))
    prev = int.from_bytes(iv, "big")
    for off in range(0, len(data), 8):
        c = int.from_bytes(data[off:off + 8], "big")
        out[off:off + 8] = (_des(rev, c) ^ prev).to_bytes(8, "big")
        prev = c
    return bytes(out)


# --- SHA-1 -----------------------------------------------------------------

def sha1_compress(state, data):
    h0, h1, h2, h3, h4 = state
    for off in range(0, len(data), 64):
        w = [int.from_bytes(data[off + 4 * i:off + 4 * i + 4], "big") for i in range(16)]
        for i in range(16, 80):
            x = w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16]
            w.append(((x << 1) | (x >> 31)) & _M32)
        a, b, c, d, e = h0, h1, h2, h3, h4
        for i in range(80):
            if i < 20:
                f = (b & c) | (~b & d)
                k = 0x5A827999
            elif i < 40:
                f = b ^ c ^ d
                k = 0x6ED9EBA1
            elif i < 60:
                f = (b & c) | (b & d) | (c & d)
                k = 0x8F1BBCDC
            else:
                f = b ^ c ^ d
                k = 0xCA62C1D6
            t = (((a << 5) | (a >> 27)) + (f & _M32) + e + k + w[i]) & _M32
            a, b, c, d, e = t, a, ((b << 30) | (b >> 2)) & _M32, c, d
        h0 = (h0 + a) & _M32
        h1 = (h1 + b) & _M32
        h2 = (h2 + c) & _M32
        h3 = (h3 + d) & _M32
        h4 = (h4 + e) & _M32
    return (h0, h1, h2, h3, h4)
