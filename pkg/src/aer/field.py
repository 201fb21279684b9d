"""Arithmetic in GF(2^8) with the AES reduction polynomial x^8 + x^4 + x^3 + x + 1.

Elements are plain ints in ``[0, 255]``; bit ``i`` is the coefficient of ``x**i``.
Multiplication goes through a 64 KiB product table built once at import by
shift-and-reduce.
"""

import numpy as np

from .errors import ZeroInverse

POLY = 0x11B
GENERATOR = 0x03
ORDER = 255  # size of the multiplicative group


def xtime(a: int) -> int:
    """Multiply by x, reducing modulo POLY."""
    a <<= 1
    if a & 0x100:
        a ^= POLY
    return a


def _shift_mul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a = xtime(a)
        b >>= 1
    return r


# MUL_ROWS[a][b] == a*b; rows are bytes so lookups stay in C.
MUL_ROWS = tuple(bytes(_shift_mul(a, b) for b in range(256)) for a in range(256))
MUL_TABLE = np.frombuffer(b"".join(MUL_ROWS), dtype=np.uint8).reshape(256, 256).copy()
MUL_TABLE.flags.writeable = False


def add(a: int, b: int) -> int:
    return a ^ b


def mul(a: int, b: int) -> int:
    return MUL_ROWS[a][b]


def power(a: int, e: int) -> int:
    """Square-and-multiply; ``power(0, 0) == 1``."""
    if e < 0:
        raise ValueError("negative exponent")
    result = 1
    for bit in bin(e)[2:]:
        result = MUL_ROWS[result][result]
        if bit == "1":
            result = MUL_ROWS[result][a]
    return result


def inv(a: int) -> int:
    if a == 0:
        raise ZeroInverse("0 has no multiplicative inverse")
    return power(a, ORDER - 1)


def element_order(a: int) -> int:
    """Smallest d >= 1 with a**d == 1; always a divisor of 255."""
    if a == 0:
        raise ZeroInverse("0 has no multiplicative order")
    for d in (1, 3, 5, 15, 17, 51, 85, 255):
        if power(a, d) == 1:
            return d
    raise AssertionError("unreachable: 255 annihilates every unit")


def to_bits(a: int) -> list[int]:
    """Coefficients LSB first, e.g. 183 -> [1, 1, 1, 0, 1, 1, 0, 1]."""
    return [(a >> i) & 1 for i in range(8)]


def to_poly(a: int) -> str:
    """Ascending-power polynomial text, e.g. 62 -> 'x+x^2+x^3+x^4+x^5'."""
    if a == 0:
        return "0"
    terms = []
    for i in range(8):
        if (a >> i) & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return "+".join(terms)
