# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled block cipher and hash kernels.

Mirrors ``_pure`` function for function.  Tables are copied from
``ncsh._kernels.tables`` into C arrays at import so both backends share one
source of constants.
"""
from libc.stdint cimport uint8_t, uint32_t, uint64_t
from libc.string cimport memcpy

from ncsh._kernels import tables as _T

cdef uint8_t S[256]
cdef uint8_t SI[256]
cdef uint32_t TE0[256]
cdef uint32_t TE1[256]
cdef uint32_t TE2[256]
cdef uint32_t TE3[256]
cdef uint32_t TD0[256]
cdef uint32_t TD1[256]
cdef uint32_t TD2[256]
cdef uint32_t TD3[256]
cdef uint32_t RCON[10]

cdef uint64_t IPB[8][256]
cdef uint64_t FPB[8][256]
cdef uint64_t PC1B[8][256]
cdef uint64_t PC2B[7][256]
cdef uint32_t SP[8][64]
cdef int SHIFTS[16]


cdef void _load_tables():
    cdef int i, j
    for i in range(256):
        S[i] = _T.SBOX[i]
        SI[i] = _T.INV_SBOX[i]
        TE0[i] = _T.TE0[i]
        TE1[i] = _T.TE1[i]
        TE2[i] = _T.TE2[i]
        TE3[i] = _T.TE3[i]
        TD0[i] = _T.TD0[i]
        TD1[i] = _T.TD1[i]
        TD2[i] = _T.TD2[i]
        TD3[i] = _T.TD3[i]
        for j in range(8):
            IPB[j][i] = _T.IP_BYTES[j][i]
            FPB[j][i] = _T.FP_BYTES[j][i]
            PC1B[j][i] = _T.PC1_BYTES[j][i]
        for j in range(7):
            PC2B[j][i] = _T.PC2_BYTES[j][i]
    for i in range(10):
        RCON[i] = _T.RCON[i]
    for j in range(8):
        for i in range(64):
            SP[j][i] = _T.SP[j][i]
    for i in range(16):
        SHIFTS[i] = _T.SHIFTS[i]


_load_tables()


cdef inline uint32_t _load32(const uint8_t* p) nogil:
    return (<uint32_t>p[0] << 24) | (<uint32_t>p[1] << 16) | (<uint32_t>p[2] << 8) | p[3]


cdef inline void _store32(uint8_t* p, uint32_t w) nogil:
    p[0] = w >> 24
    p[1] = (w >> 16) & 0xFF
    p[2] = (w >> 8) & 0xFF
    p[3] = w & 0xFF


cdef inline uint64_t _load64(const uint8_t* p) nogil:
    return (<uint64_t>_load32(p) << 32) | _load32(p + 4)


cdef inline void _store64(uint8_t* p, uint64_t x) nogil:
    _store32(p, <uint32_t>(x >> 32))
    _store32(p + 4, <uint32_t>x)


cdef void _check(Py_ssize_t got, Py_ssize_t want, str what) except *:
    if got != want:
        raise ValueError(f"{what} must be {want} octets, got {got}")


cdef void _check_blocks(Py_ssize_t got, Py_ssize_t bs) except *:
    if got % bs:
        raise ValueError(f"data length {got} is not a multiple of {bs}")


# --- AES-128 ---------------------------------------------------------------

cdef inline uint32_t _sub_word(uint32_t w) nogil:
    return (<uint32_t>S[w >> 24] << 24) | (<uint32_t>S[(w >> 16) & 0xFF] << 16) | (<uint32_t>S[(w >> 8) & 0xFF] << 8) | S[w & 0xFF]


cdef class AesSchedule:
    cdef uint32_t ek[44]
    cdef uint32_t dk[44]


def aes_expand_key(const uint8_t[:] key):
    _check(key.shape[0], 16, "AES key")
    cdef AesSchedule ks = AesSchedule()
    cdef int i, r, c
    cdef uint32_t t, w
    for i in range(4):
        ks.ek[i] = _load32(&key[4 * i])
    for i in range(4, 44):
        t = ks.ek[i - 1]
        if i % 4 == 0:
            t = _sub_word((t << 8) | (t >> 24)) ^ (RCON[i // 4 - 1] << 24)
        ks.ek[i] = ks.ek[i - 4] ^ t
    for r in range(11):
        for c in range(4):
            w = ks.ek[4 * (10 - r) + c]
            if 0 < r < 10:
                w = TD0[S[w >> 24]] ^ TD1[S[(w >> 16) & 0xFF]] ^ TD2[S[(w >> 8) & 0xFF]] ^ TD3[S[w & 0xFF]]
            ks.dk[4 * r + c] = w
    return ks


cdef void _aes_enc(const uint32_t* rk, const uint8_t* inp, uint8_t* out) nogil:
    cdef uint32_t s0, s1, s2, s3, t0, t1, t2, t3
    cdef int r
    s0 = _load32(inp) ^ rk[0]
    s1 = _load32(inp + 4) ^ rk[1]
    s2 = _load32(inp + 8) ^ rk[2]
    s3 = _load32(inp + 12) ^ rk[3]
    for r in range(4, 40, 4):
        t0 = TE0[s0 >> 24] ^ TE1[(s1 >> 16) & 0xFF] ^ TE2[(s2 >> 8) & 0xFF] ^ TE3[s3 & 0xFF] ^ rk[r]
        t1 = TE0[s1 >> 24] ^ TE1[(s2 >> 16) & 0xFF] ^ TE2[(s3 >> 8) & 0xFF] ^ TE3[s0 & 0xFF] ^ rk[r + 1]
        t2 = TE0[s2 >> 24] ^ TE1[(s3 >> 16) & 0xFF] ^ TE2[(s0 >> 8) & 0xFF] ^ TE3[s1 & 0xFF] ^ rk[r + 2]
        t3 = TE0[s3 >> 24] ^ TE1[(s0 >> 16) & 0xFF] ^ TE2[(s1 >> 8) & 0xFF] ^ TE3[s2 & 0xFF] ^ rk[r + 3]
        s0 = t0
        s1 = t1
        s2 = t2
        s3 = t3
    _store32(out, ((<uint32_t>S[s0 >> 24] << 24) | (<uint32_t>S[(s1 >> 16) & 0xFF] << 16) | (<uint32_t>S[(s2 >> 8) & 0xFF] << 8) | S[s3 & 0xFF]) ^ rk[40])
    _store32(out + 4, ((<uint32_t>S[s1 >> 24] << 24) | (<uint32_t>S[(s2 >> 16) & 0xFF] << 16) | (<uint32_t>S[(s3 >> 8) & 0xFF] << 8) | S[s0 & 0xFF]) ^ rk[41])
    _store32(out + 8, ((<uint32_t>S[s2 >> 24] << 24) | (<uint32_t>S[(s3 >> 16) & 0xFF] << 16) | (<uint32_t>S[(s0 >> 8) & 0xFF] << 8) | S[s1 & 0xFF]) ^ rk[42])
    _store32(out + 12, ((<uint32_t>S[s3 >> 24] << 24) | (<uint32_t>S[(s0 >> 16) & 0xFF] << 16) | (<uint32_t>S[(s1 >> 8) & 0xFF] << 8) | S[s2 & 0xFF]) ^ rk[43])


cdef void _aes_dec(const uint32_t* rk, const uint8_t* inp, uint8_t* out) nogil:
    cdef uint32_t s0, s1, s2, s3, t0, t1, t2, t3
    cdef int r
    s0 = _load32(inp) ^ rk[0]
    s1 = _load32(inp + 4) ^ rk[1]
    s2 = _load32(inp + 8) ^ rk[2]
    s3 = _load32(inp + 12) ^ rk[3]
    for r in range(4, 40, 4):
        t0 = TD0[s0 >> 24] ^ TD1[(s3 >> 16) & 0xFF] ^ TD2[(s2 >> 8) & 0xFF] ^ TD3[s1 & 0xFF] ^ rk[r]
        t1 = TD0[s1 >> 24] ^ TD1[(s0 >> 16) & 0xFF] ^ TD2[(s3 >> 8) & 0xFF] ^ TD3[s2 & 0xFF] ^ rk[r + 1]
        t2 = TD0[s2 >> 24] ^ TD1[(s1 >> 16) & 0xFF] ^ TD2[(s0 >> 8) & 0xFF] ^ TD3[s3 & 0xFF] ^ rk[r + 2]
        t3 = TD0[s3 >> 24] ^ TD1[(s2 >> 16) & 0xFF] ^ TD2[(s1 >> 8) & 0xFF] ^ TD3[s0 & 0xFF] ^ rk[r + 3]
        s0 = t0
        s1 = t1
        s2 = t2
        s3 = t3
    _store32(out, ((<uint32_t>SI[s0 >> 24] << 24) | (<uint32_t>SI[(s3 >> 16) & 0xFF] << 16) | (<uint32_t>SI[(s2 >> 8) & 0xFF] << 8) | SI[s1 & 0xFF]) ^ rk[40])
    _store32(out + 4, ((<uint32_t>SI[s1 >> 24] << 24) | (<uint32_t>SI[(s0 >> 16) & 0xFF] << 16) | (<uint32_t>SI[(s3 >> 8) & 0xFF] << 8) | SI[s2 & 0xFF]) ^ rk[41])
    _store32(out + 8, ((<uint32_t>SI[s2 >> 24] << 24) | (<uint32_t>SI[(s1 >> 16) & 0xFF] << 16) | (<uint32_t>SI[(s0 >> 8) & 0xFF] << 8) | SI[s3 & 0xFF]) ^ rk[42])
    _store32(out + 12, ((<uint32_t>SI[s3 >> 24] << 24) | (<uint32_t>SI[(s2 >> 16) & 0xFF] << 16) | (<uint32_t>SI[(s1 >> 8) & 0xFF] << 8) | SI[s0 & 0xFF]) ^ rk[43])


def aes_encrypt_block(AesSchedule ks, const uint8_t[:] block):
    _check(block.shape[0], 16, "AES block")
    cdef uint8_t out[16]
    _aes_enc(ks.ek, &block[0], out)
    return (<char*>out)[:16]


def aes_decrypt_block(AesSchedule ks, const uint8_t[:] block):
    _check(block.shape[0], 16, "AES block")
    cdef uint8_t out[16]
    _aes_dec(ks.dk, &block[0], out)
    return (<char*>out)[:16]


def aes_cbc_encrypt(AesSchedule ks, const uint8_t[:] iv, const uint8_t[:] data):
    _check(iv.shape[0], 16, "AES IV")
    cdef Py_ssize_t n = data.shape[0], off
    _check_blocks(n, 16)
    out = bytearray(n)
    if n == 0:
        return b""
    cdef uint8_t[:] o = out
    cdef uint8_t buf[16]
    cdef uint8_t prev[16]
    cdef int i
    memcpy(prev, &iv[0], 16)
    with nogil:
        off = 0
        while off < n:
            for i in range(16):
                buf[i] = data[off + i] ^ prev[i]
            _aes_enc(ks.ek, buf, prev)
            memcpy(&o[off], prev, 16)
            off += 16
    return bytes(out)


def aes_cbc_decrypt(AesSchedule ks, const uint8_t[:] iv, const uint8_t[:] data):
    _check(iv.shape[0], 16, "AES IV")
    cdef Py_ssize_t n = data.shape[0], off
    _check_blocks(n, 16)
    out = bytearray(n)
    if n == 0:
        return b""
    cdef uint8_t[:] o = out
    cdef uint8_t buf[16]
    cdef const uint8_t* prev = &iv[0]
    cdef int i
    with nogil:
        off = 0
        while off < n:
            _aes_dec(ks.dk, &data[off], buf)
            for i in range(16):
                o[off + i] = buf[i] ^ prev[i]
            prev = &data[off]
            off += 16
    return bytes(out)


# --- DES -------------------------------------------------------------------

cdef class DesSchedule:
    cdef uint64_t ek[16]
    cdef uint64_t dk[16]

    def __getitem__(self, int i):
        if not 0 <= i < 16:
            raise IndexError(i)
        return self.ek[i]

    def __len__(self):
        return 16


cdef inline uint64_t _perm64(uint64_t x, uint64_t tab[8][256]) nogil:
    return (tab[0][x >> 56] | tab[1][(x >> 48) & 0xFF] | tab[2][(x >> 40) & 0xFF] | tab[3][(x >> 32) & 0xFF]
            | tab[4][(x >> 24) & 0xFF] | tab[5][(x >> 16) & 0xFF] | tab[6][(x >> 8) & 0xFF] | tab[7][x & 0xFF])


def des_key_schedule(const uint8_t[:] key):
    _check(key.shape[0], 8, "DES key")
    cdef DesSchedule ks = DesSchedule()
    cdef uint64_t cd = _perm64(_load64(&key[0]), PC1B)
    cdef uint32_t c = <uint32_t>(cd >> 28), d = <uint32_t>(cd & 0xFFFFFFF)
    cdef uint64_t x
    cdef int r, s
    for r in range(16):
        s = SHIFTS[r]
        c = ((c << s) | (c >> (28 - s))) & 0xFFFFFFF
        d = ((d << s) | (d >> (28 - s))) & 0xFFFFFFF
        x = (<uint64_t>c << 28) | d
        ks.ek[r] = (PC2B[0][x >> 48] | PC2B[1][(x >> 40) & 0xFF] | PC2B[2][(x >> 32) & 0xFF]
                    | PC2B[3][(x >> 24) & 0xFF] | PC2B[4][(x >> 16) & 0xFF] | PC2B[5][(x >> 8) & 0xFF]
                    | PC2B[6][x & 0xFF])
    for r in range(16):
        ks.dk[r] = ks.ek[15 - r]
    return ks


cdef uint64_t _des(const uint64_t* subkeys, uint64_t x) nogil:
    x = _perm64(x, IPB)
    cdef uint32_t left = <uint32_t>(x >> 32), right = <uint32_t>x, f, tmp
    cdef uint64_t e, k
    cdef int r
    for r in range(16):
        k = subkeys[r]
        e = ((<uint64_t>(right & 1)) << 33) | (<uint64_t>right << 1) | (right >> 31)
        f = (SP[0][((e >> 28) ^ (k >> 42)) & 0x3F]
             | SP[1][((e >> 24) ^ (k >> 36)) & 0x3F]
             | SP[2][((e >> 20) ^ (k >> 30)) & 0x3F]
             | SP[3][((e >> 16) ^ (k >> 24)) & 0x3F]
             | SP[4][((e >> 12) ^ (k >> 18)) & 0x3F]
             | SP[5][((e >> 8) ^ (k >> 12)) & 0x3F]
             | SP[6][((e >> 4) ^ (k >> 6)) & 0x3F]
             | SP[7][(e ^ k) & 0x3F])
        tmp = right
        right = left ^ f
        left = tmp
    return _perm64((<uint64_t>right << 32) | left, FPB)


def des_encrypt_block(DesSchedule ks, const uint8_t[:] block):
    _check(block.shape[0], 8, "DES block")
    cdef uint8_t out[8]
    _store64(out, _des(ks.ek, _load64(&block[0])))
    return (<char*>out)[:8]


def des_decrypt_block(DesSchedule ks, const uint8_t[:] block):
    _check(block.shape[0], 8, "DES block")
    cdef uint8_t out[8]
    _store64(out, _des(ks.dk, _load64(&block[0])))
    return (<char*>out)[:8]


def des_cbc_encrypt(DesSchedule ks, const uint8_t[:] iv, const uint8_t[:] data):
    _check(iv.shape[0], 8, "DES IV")
    cdef Py_ssize_t n = data.shape[0], off
    _check_blocks(n, 8)
    out = bytearray(n)
    if n == 0:
        return b""
    cdef uint8_t[:] o = out
    cdef uint64_t prev = _load64(&iv[0])
    with nogil:
        off = 0
        while off < n:
            prev = _des(ks.ek, _load64(&data[off]) ^ prev)
            _store64(&o[off], prev)
            off += 8
    return bytes(out)


def des_cbc_decrypt(DesSchedule ks, const uint8_t[:] iv, const uint8_t[:] data):
    _check(iv.shape[0], 8, "DES IV")
    cdef Py_ssize_t n = data.shape[0], off
    _check_blocks(n, 8)
    out = bytearray(n)
    if n == 0:
        return b""
    cdef uint8_t[:] o = out
    cdef uint64_t prev = _load64(&iv[0]), c
    with nogil:
        off = 0
        while off < n:
            c = _load64(&data[off])
            _store64(&o[off], _des(ks.dk, c) ^ prev)
            prev = c
            off += 8
    return bytes(out)


# --- SHA-1 -----------------------------------------------------------------

cdef inline uint32_t _rotl(uint32_t x, int s) nogil:
    return (x << s) | (x >> (32 - s))


def sha1_compress(state, const uint8_t[:] data):
    cdef Py_ssize_t n = data.shape[0], off
    _check_blocks(n, 64)
    cdef uint32_t h0 = state[0], h1 = state[1], h2 = state[2], h3 = state[3], h4 = state[4]
    cdef uint32_t w[80]
    cdef uint32_t a, b, c, d, e, f, k, t
    cdef int i
    with nogil:
        off = 0
        while off < n:
            for i in range(16):
                w[i] = _load32(&data[off + 4 * i])
            for i in range(16, 80):
                w[i] = _rotl(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1)
            a = h0
            b = h1
            c = h2
            d = h3
            e = h4
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
                t = _rotl(a, 5) + f + e + k + w[i]
                e = d
                d = c
                c = _rotl(b, 30)
                b = a
                a = t
            h0 += a
            h1 += b
            h2 += c
            h3 += d
            h4 += e
            off += 64
    return (h0, h1, h2, h3, h4)
