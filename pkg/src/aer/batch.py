"""Vectorised matrix arithmetic over stacks of shape ``(N, n, n)`` (uint8).

Used where a statistic needs 1e4-1e5 matrices at once; results must match
the scalar routines in :mod:`aer.matrix` entry for entry.
"""

import numpy as np

from .field import MUL_TABLE


def batch_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    out = np.zeros_like(a)
    for i in range(n):
        for j in range(n):
            acc = out[:, i, j]
            for k in range(n):
                acc ^= MUL_TABLE[a[:, i, k], b[:, k, j]]
    return out


def batch_pow(a: np.ndarray, e: int) -> np.ndarray:
    n = a.shape[-1]
    acc = np.broadcast_to(np.eye(n, dtype=np.uint8), a.shape).copy()
    for bit in bin(e)[2:]:
        acc = batch_mul(acc, acc)
        if bit == "1":
            acc = batch_mul(acc, a)
    return acc


def random_stack(count: int, n: int, rng) -> np.ndarray:
    """``count`` matrices drawn exactly as ``random_matrix`` would, in order."""
    return np.frombuffer(rng.read(count * n * n), dtype=np.uint8).reshape(count, n, n).copy()
