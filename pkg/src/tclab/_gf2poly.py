"""Bit-packed GF(2)[x] primitives on plain Python ints.

Bit k of an int is the coefficient of x^k.  Everything here is
representation-level plumbing shared by the field and polynomial layers;
the public classes live in binaryfield and unipoly.
"""
from __future__ import annotations

from typing import Iterable

# Byte lookup table for interleaving one zero bit between consecutive bits.
_SPREAD2 = [0] * 256
for _b in range(256):
    _v = 0
    for _i in range(8):
        if _b >> _i & 1:
            _v |= 1 << (2 * _i)
    _SPREAD2[_b] = _v

KARATSUBA_BITS = 4096


def deg(a: int) -> int:
    """Degree of a, with deg(0) == -1."""
    return a.bit_length() - 1


def from_exponents(exps: Iterable[int]) -> int:
    out = 0
    for e in exps:
        if e < 0:
            raise ValueError("negative exponent")
        out ^= 1 << e
    return out


def to_exponents(a: int) -> list[int]:
    """Exponents of the nonzero terms, descending."""
    out = []
    while a:
        d = a.bit_length() - 1
        out.append(d)
        a ^= 1 << d
    return out


def spread2(a: int) -> int:
    """Map sum x^i to sum x^(2i); equals squaring in GF(2)[x]."""
    out = 0
    shift = 0
    for byte in a.to_bytes((a.bit_length() + 7) // 8 or 1, "little"):
        out |= _SPREAD2[byte] << shift
        shift += 16
    return out


def spread(a: int, k: int) -> int:
    """Map sum x^i to sum x^(k*i) for k a power of two."""
    if k <= 0 or k & (k - 1):
        raise ValueError("spread factor must be a power of two")
    while k > 1:
        a = spread2(a)
        k >>= 1
    return a


def _mul_schoolbook(a: int, b: int) -> int:
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        out ^= b << (low.bit_length() - 1)
        a ^= low
    return out


def mul(a: int, b: int) -> int:
    """Carryless product; splits recursively once operands get large."""
    if a == 0 or b == 0:
        return 0
    na, nb = a.bit_length(), b.bit_length()
    if na < KARATSUBA_BITS or nb < KARATSUBA_BITS:
        return _mul_schoolbook(a, b)
    h = max(na, nb) >> 1
    mask = (1 << h) - 1
    a0, a1 = a & mask, a >> h
    b0, b1 = b & mask, b >> h
    z0 = mul(a0, b0)
    z2 = mul(a1, b1)
    z1 = mul(a0 ^ a1, b0 ^ b1) ^ z0 ^ z2
    return z0 ^ (z1 << h) ^ (z2 << (2 * h))


def sq(a: int) -> int:
    return spread2(a)


def mod(a: int, m: int) -> int:
    if m == 0:
        raise ZeroDivisionError("reduction by zero polynomial")
    dm = m.bit_length() - 1
    da = a.bit_length() - 1
    while da >= dm:
        a ^= m << (da - dm)
        da = a.bit_length() - 1
    return a


def divmod_(a: int, m: int) -> tuple[int, int]:
    if m == 0:
        raise ZeroDivisionError("division by zero polynomial")
    dm = m.bit_length() - 1
    q = 0
    da = a.bit_length() - 1
    while da >= dm:
        s = da - dm
        q ^= 1 << s
        a ^= m << s
        da = a.bit_length() - 1
    return q, a


def gcd(a: int, b: int) -> int:
    while b:
        a, b = b, mod(a, b)
    return a


def mulmod(a: int, b: int, m: int) -> int:
    return mod(mul(a, b), m)


def sqmod(a: int, m: int) -> int:
    return mod(spread2(a), m)


def powmod(a: int, e: int, m: int) -> int:
    if e < 0:
        raise ValueError("negative exponent")
    out = mod(1, m)
    a = mod(a, m)
    while e:
        if e & 1:
            out = mod(mul(out, a), m)
        a = sqmod(a, m)
        e >>= 1
    return out


def derivative(a: int) -> int:
    # Odd-exponent bits shift down; even-exponent terms die in char 2.
    out = 0
    e = 1
    a >>= 1
    while a:
        if a & 1 and e & 1:
            out |= 1 << (e - 1)
        a >>= 1
        e += 1
    return out


def _small_prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: int) -> bool:
    """Rabin's test: x^(2^n) == x mod f and coprimality at maximal subfields."""
    n = f.bit_length() - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    if f & 1 == 0:  # divisible by x
        return False
    x = 2
    for p in _small_prime_factors(n):
        t = x
        for _ in range(n // p):
            t = sqmod(t, f)
        if gcd(t ^ x, f) != 1:
            return False
    t = x
    for _ in range(n):
        t = sqmod(t, f)
    return t == x
