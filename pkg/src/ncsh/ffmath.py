"""Finite-field and number-theory core.

Python's ``int`` is the arbitrary-precision integer type throughout; it is
exact and canonical, so no separate bignum container is kept.  Everything in
this module is a pure function of its arguments; randomness is always passed
in by the caller.
"""
from __future__ import annotations

import random
from math import gcd
from dataclasses import dataclass

from . import instrument
from .errors import InvalidArgument, NotInvertible

MR_ROUNDS = 40
AES_POLY = 0x11B  # x^8 + x^4 + x^3 + x + 1

_TRIAL_LIMIT = 2048
_SMALL_PRIMES = [p for p in range(3, _TRIAL_LIMIT) if all(p % d for d in range(2, int(p**0.5) + 1))]
_SMALL_PRODUCT = 1
for _p in _SMALL_PRIMES:
    _SMALL_PRODUCT *= _p
del _p

_sysrand = random.SystemRandom()


def _smallest_factor(q: int) -> int:
    if q % 2 == 0:
        return 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return f
        f += 2
    return q


def field_exists(q: int) -> bool:
    """True iff a finite field with ``q`` elements exists (q a prime power)."""
    if q < 2:
        raise InvalidArgument(f"field order must be >= 2, got {q}")
    p = _smallest_factor(q)
    while q % p == 0:
        q //= p
    return q == 1


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b)`` and ``a*x + b*y = g``."""
    if a < 0 or b < 0:
        raise InvalidArgument("egcd operands must be non-negative")
    if a == 0 and b == 0:
        raise InvalidArgument("egcd(0, 0) is undefined")
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    return old_r, old_x, old_y


def mod_inv(a: int, n: int) -> int:
    if n < 2:
        raise InvalidArgument(f"modulus must be >= 2, got {n}")
    a %= n
    if a == 0:
        raise NotInvertible(f"0 has no inverse modulo {n}")
    g, x, _ = egcd(a, n)
    if g != 1:
        raise NotInvertible(f"gcd({a}, {n}) = {g}")
    return x % n


def mod_pow(base: int, exp: int, n: int) -> int:
    """Left-to-right square-and-multiply.

    Exponents longer than 64 bits are scanned in 4-bit windows; the window
    table is the only extra working storage.
    """
    if n < 1:
        raise InvalidArgument("modulus must be >= 1")
    if exp < 0:
        raise InvalidArgument("negative exponent")
    if n == 1:
        return 0
    base %= n
    if exp == 0:
        return 1

    width = 4 if exp.bit_length() > 64 else 1
    meter = instrument.active()
    if meter is not None:
        k = (n.bit_length() + 7) // 8
        # accumulator + base + double-width product, plus the window table
        held = 4 * k + ((1 << width) * k if width > 1 else 0)
        meter.hold(held)

    if width == 1:
        acc = base
        for bit in bin(exp)[3:]:
            acc = acc * acc % n
            if bit == "1":
                acc = acc * base % n
    else:
        table = [1, base]
        for _ in range(14):
            table.append(table[-1] * base % n)
        nbits = exp.bit_length()
        top = (nbits + 3) // 4 * 4
        acc = 1
        for shift in range(top - 4, -1, -4):
            acc = acc * acc % n
            acc = acc * acc % n
            acc = acc * acc % n
            acc = acc * acc % n
            digit = (exp >> shift) & 0xF
            if digit:
                acc = acc * table[digit] % n

    if meter is not None:
        meter.release(held)
    return acc


def is_probable_prime(n: int, rounds: int = MR_ROUNDS, rng: random.Random | None = None) -> bool:
    if rounds < 1:
        raise InvalidArgument("rounds must be >= 1")
    if n < 2:
        return False
    if n < _TRIAL_LIMIT:
        return n == 2 or (n % 2 == 1 and _smallest_factor(n) == n)
    if n % 2 == 0:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return False

    rng = rng or _sysrand
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = mod_pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def gen_prime(bits: int, rng: random.Random, top_bits: int = 1) -> int:
    """Random prime with exactly ``bits`` bits.

    ``top_bits=2`` also sets the second-highest bit, so the product of two
    such primes always has exactly ``2 * bits`` bits.
    """
    if bits < 8:
        raise InvalidArgument("prime size must be >= 8 bits")
    if top_bits not in (1, 2):
        raise InvalidArgument("top_bits must be 1 or 2")
    top = (1 << (bits - 1)) | ((top_bits - 1) << (bits - 2))
    while True:
        cand = rng.getrandbits(bits) | top | 1
        if cand >= _TRIAL_LIMIT:
            # cheap sieve before any exponentiation
            if gcd(cand, _SMALL_PRODUCT) != 1:
                continue
            if not is_probable_prime(cand, 1, rng):
                continue
        if is_probable_prime(cand, MR_ROUNDS, rng):
            return cand


@dataclass(frozen=True)
class PrimeField:
    """GF(p) for a prime ``p``; construction checks primality."""

    p: int

    def __post_init__(self):
        if not is_probable_prime(self.p, MR_ROUNDS):
            raise InvalidArgument(f"{self.p} is not prime")

    def check(self, *elems: int) -> None:
        for a in elems:
            if not 0 <= a < self.p:
                raise InvalidArgument(f"{a} is not an element of GF({self.p})")


def _field(p: PrimeField | int) -> PrimeField:
    return p if isinstance(p, PrimeField) else PrimeField(p)


def gfp_add(a: int, b: int, p: PrimeField | int) -> int:
    f = _field(p)
    f.check(a, b)
    return (a + b) % f.p


def gfp_sub(a: int, b: int, p: PrimeField | int) -> int:
    f = _field(p)
    f.check(a, b)
    return (a - b + f.p) % f.p


def gfp_mul(a: int, b: int, p: PrimeField | int) -> int:
    f = _field(p)
    f.check(a, b)
    return a * b % f.p


def gfp_inv(a: int, p: PrimeField | int) -> int:
    f = _field(p)
    f.check(a)
    return mod_inv(a, f.p)


def _check_byte(a: int) -> None:
    if not 0 <= a <= 0xFF:
        raise InvalidArgument(f"{a} is not a GF(2^8) element")


def gf256_mul(a: int, b: int) -> int:
    """Carry-less product reduced modulo x^8+x^4+x^3+x+1."""
    _check_byte(a)
    _check_byte(b)
    product = 0
    while b:
        if b & 1:
            product ^= a
        a <<= 1
        if a & 0x100:
            a ^= AES_POLY
        b >>= 1
    return product


def gf256_inv(a: int) -> int:
    _check_byte(a)
    if a == 0:
        raise NotInvertible("0 has no inverse in GF(2^8)")
    # a^254 = a^-1 since the multiplicative group has order 255
    result, power, e = 1, a, 254
    while e:
        if e & 1:
            result = gf256_mul(result, power)
        power = gf256_mul(power, power)
        e >>= 1
    return result
