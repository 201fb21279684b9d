"""Compiled inner loops for power-cycle detection.

Invertible 2x2 matrices have periods up to 65535 and 3x3 ones up to
~1.7e7, so walking the power sequence one product at a time needs machine
code. Two layouts are provided: 2x2 matrices packed into one int64 (byte k
is row-major entry k), and generic n x n matrices as flat uint8 arrays.

Each detector returns ``(tail, period)`` for the sequence X^1, X^2, ...
where ``tail`` counts the powers before the cycle is entered.
"""

import numpy as np
from numba import njit

from .field import MUL_TABLE

_M = np.ascontiguousarray(MUL_TABLE)


@njit(cache=True, nogil=True)
def _mul2(M, x, y):
    a = x & 255
    b = (x >> 8) & 255
    c = (x >> 16) & 255
    d = (x >> 24) & 255
    e = y & 255
    f = (y >> 8) & 255
    g = (y >> 16) & 255
    h = (y >> 24) & 255
    r0 = np.int64(M[a, e] ^ M[b, g])
    r1 = np.int64(M[a, f] ^ M[b, h])
    r2 = np.int64(M[c, e] ^ M[d, g])
    r3 = np.int64(M[c, f] ^ M[d, h])
    return r0 | (r1 << 8) | (r2 << 16) | (r3 << 24)


@njit(cache=True, nogil=True)
def floyd2(M, x):
    t = x
    h = _mul2(M, x, x)
    while t != h:
        t = _mul2(M, t, x)
        h = _mul2(M, _mul2(M, h, x), x)
    # t sits at some index i with X^i == X^(2i); restart t at X^1, h at X^(i+1)
    h = _mul2(M, h, x)
    t = x
    tail = 0
    while t != h:
        t = _mul2(M, t, x)
        h = _mul2(M, h, x)
        tail += 1
    period = 1
    h = _mul2(M, t, x)
    while t != h:
        h = _mul2(M, h, x)
        period += 1
    return tail, period


@njit(cache=True, nogil=True)
def brent2(M, x):
    power = 1
    period = 1
    t = x
    h = _mul2(M, x, x)
    while t != h:
        if power == period:
            t = h
            power *= 2
            period = 0
        h = _mul2(M, h, x)
        period += 1
    t = x
    h = x
    for _ in range(period):
        h = _mul2(M, h, x)
    tail = 0
    while t != h:
        t = _mul2(M, t, x)
        h = _mul2(M, h, x)
        tail += 1
    return tail, period


@njit(cache=True, nogil=True)
def _matmul(M, n, a, b, out):
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc ^= M[a[i * n + k], b[k * n + j]]
            out[i * n + j] = acc


@njit(cache=True, nogil=True)
def _step(M, n, y, x, tmp):
    # y <- y @ x in place
    _matmul(M, n, y, x, tmp)
    y[:] = tmp


@njit(cache=True, nogil=True)
def _equal(a, b):
    for i in range(a.shape[0]):
        if a[i] != b[i]:
            return False
    return True


@njit(cache=True, nogil=True)
def floyd_n(M, n, x):
    tmp = np.empty_like(x)
    t = x.copy()
    h = x.copy()
    _step(M, n, h, x, tmp)
    while not _equal(t, h):
        _step(M, n, t, x, tmp)
        _step(M, n, h, x, tmp)
        _step(M, n, h, x, tmp)
    _step(M, n, h, x, tmp)
    t[:] = x
    tail = 0
    while not _equal(t, h):
        _step(M, n, t, x, tmp)
        _step(M, n, h, x, tmp)
        tail += 1
    period = 1
    h[:] = t
    _step(M, n, h, x, tmp)
    while not _equal(t, h):
        _step(M, n, h, x, tmp)
        period += 1
    return tail, period


@njit(cache=True, nogil=True)
def brent_n(M, n, x):
    tmp = np.empty_like(x)
    power = 1
    period = 1
    t = x.copy()
    h = x.copy()
    _step(M, n, h, x, tmp)
    while not _equal(t, h):
        if power == period:
            t[:] = h
            power *= 2
            period = 0
        _step(M, n, h, x, tmp)
        period += 1
    t[:] = x
    h[:] = x
    for _ in range(period):
        _step(M, n, h, x, tmp)
    tail = 0
    while not _equal(t, h):
        _step(M, n, t, x, tmp)
        _step(M, n, h, x, tmp)
        tail += 1
    return tail, period


def pack2(entries) -> int:
    a, b, c, d = entries
    return a | (b << 8) | (c << 16) | (d << 24)


def floyd(n: int, entries) -> tuple[int, int]:
    if n == 2:
        return floyd2(_M, np.int64(pack2(entries)))
    return floyd_n(_M, n, np.array(entries, dtype=np.uint8))


def brent(n: int, entries) -> tuple[int, int]:
    if n == 2:
        return brent2(_M, np.int64(pack2(entries)))
    return brent_n(_M, n, np.array(entries, dtype=np.uint8))
