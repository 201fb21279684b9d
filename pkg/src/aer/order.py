"""Power-cycle analysis of AER elements.

Every element's power sequence X, X^2, X^3, ... is eventually periodic and
its cycle contains exactly one idempotent (the *terminal*). Invertible
elements cycle back to the identity; singular ones settle on a spurious
identity or on the zero matrix.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from . import batch, kernels
from .errors import BadCandidate, BadDimension, BadSampleCount
from .matrix import AerMatrix, identity, limit_exponent, mat_mul, mat_pow, tensor_det, zero
from .rng import SeededRng

Q = 256

# 2 * 3 * 5 * 17 * 257: every invertible 2x2 order divides 65535 or 510
N2_CANDIDATE = 131070
N2_CANDIDATE_FACTORS = {2: 1, 3: 1, 5: 1, 17: 1, 257: 1}


class Classification(enum.Enum):
    TRUE_IDENTITY = "TrueIdentity"
    SPURIOUS_IDENTITY = "SpuriousIdentity"
    ZERO_ABSORBING = "ZeroAbsorbing"


class InverseKind(enum.Enum):
    VERIFIED = "Verified"
    SPURIOUS = "Spurious"
    NOT_INVERTIBLE = "NotInvertible"


@dataclass(frozen=True)
class CycleInfo:
    tail: int
    period: int
    terminal: AerMatrix
    classification: Classification


@dataclass(frozen=True)
class InverseResult:
    kind: InverseKind
    value: Optional[AerMatrix]
    via_fallback: bool = False


def _classify_idempotent(e: AerMatrix) -> Classification:
    if e == identity(e.dim):
        return Classification.TRUE_IDENTITY
    if e == zero(e.dim):
        return Classification.ZERO_ABSORBING
    return Classification.SPURIOUS_IDENTITY


def terminal_index(tail: int, period: int) -> int:
    """1-based index of the idempotent power: the first multiple of the
    period that lies inside the cycle (index > tail)."""
    return period * (tail // period + 1)


def _cycle_info(x: AerMatrix, tail: int, period: int) -> CycleInfo:
    terminal = mat_pow(x, terminal_index(tail, period))
    return CycleInfo(tail, period, terminal, _classify_idempotent(terminal))


def floyd_cycle(x: AerMatrix) -> CycleInfo:
    """Tortoise-and-hare over Y <- Y X."""
    tail, period = kernels.floyd(x.dim, x.entries)
    return _cycle_info(x, int(tail), int(period))


def brent_cycle(x: AerMatrix) -> CycleInfo:
    """Brent's power-of-two variant; same contract as :func:`floyd_cycle`."""
    tail, period = kernels.brent(x.dim, x.entries)
    return _cycle_info(x, int(tail), int(period))


@lru_cache(maxsize=None)
def cycle_exponent(n: int) -> int:
    """A common multiple of every period in M[F256, n] that also exceeds every tail.

    lcm(q^i - 1, i <= n) covers semisimple parts; 2^ceil(log2 n) covers
    unipotent Jordan blocks. No factorisation needed.
    """
    if n < 1:
        raise BadDimension(f"dimension must be >= 1, got {n}")
    m = math.lcm(*(Q**i - 1 for i in range(1, n + 1)))
    return m * (1 << (n - 1).bit_length())


def idempotent_power(x: AerMatrix) -> AerMatrix:
    """The terminal idempotent, reached in O(log) products instead of a walk."""
    return mat_pow(x, cycle_exponent(x.dim))


def classify(x: AerMatrix) -> Classification:
    return _classify_idempotent(idempotent_power(x))


def classify_stack(stack: np.ndarray) -> list[Classification]:
    """Vectorised :func:`classify` over an ``(N, n, n)`` uint8 stack."""
    n = stack.shape[-1]
    e = batch.batch_pow(stack, cycle_exponent(n))
    flat = e.reshape(len(e), -1)
    is_id = (flat == np.eye(n, dtype=np.uint8).ravel()).all(axis=1)
    is_zero = ~flat.any(axis=1)
    out = []
    for i, z in zip(is_id, is_zero):
        if i:
            out.append(Classification.TRUE_IDENTITY)
        elif z:
            out.append(Classification.ZERO_ABSORBING)
        else:
            out.append(Classification.SPURIOUS_IDENTITY)
    return out


def multiplicative_order(x: AerMatrix) -> Optional[int]:
    """Smallest d >= 1 with x^d = I, or None when no power reaches I."""
    info = brent_cycle(x)
    if info.classification is not Classification.TRUE_IDENTITY:
        return None
    return info.period


def _factor_small(m: int) -> dict[int, int]:
    if m == N2_CANDIDATE:
        return dict(N2_CANDIDATE_FACTORS)
    factors: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    return factors


def divisors(m: int) -> list[int]:
    """All divisors of ``m``, ascending, built from its prime factorisation."""
    if m < 1:
        raise BadCandidate(f"candidate multiple must be >= 1, got {m}")
    divs = [1]
    for p, k in _factor_small(m).items():
        divs = [d * p**j for d in divs for j in range(k + 1)]
    return sorted(divs)


def order_by_divisors(x: AerMatrix, candidate_multiple: int = N2_CANDIDATE) -> Optional[int]:
    """First divisor d of ``candidate_multiple`` (ascending) with x^d = I."""
    one = identity(x.dim)
    for d in divisors(candidate_multiple):
        if mat_pow(x, d) == one:
            return d
    return None


def inverse_shortcut(x: AerMatrix) -> AerMatrix:
    """x^(256^(n^2) - 2). Only a candidate: wrong for elements of even order."""
    return mat_pow(x, limit_exponent(x.dim))


def _is_inverse(x: AerMatrix, c: AerMatrix) -> bool:
    one = identity(x.dim)
    return mat_mul(c, x) == one and mat_mul(x, c) == one


def spurious_inverse(x: AerMatrix, info: CycleInfo) -> AerMatrix:
    """The cycle element S with S X equal to the terminal idempotent."""
    j = terminal_index(info.tail, info.period) - 1
    if j <= info.tail:
        j += info.period
    return mat_pow(x, j)


def verified_inverse(x: AerMatrix) -> InverseResult:
    candidate = inverse_shortcut(x)
    if _is_inverse(x, candidate):
        return InverseResult(InverseKind.VERIFIED, candidate)
    if tensor_det(x) != 0:
        d = order_by_divisors(x, N2_CANDIDATE) if x.dim == 2 else multiplicative_order(x)
        if d is None:
            raise AssertionError(f"nonzero determinant but no order found for {x}")
        return InverseResult(InverseKind.VERIFIED, mat_pow(x, d - 1), via_fallback=True)
    info = brent_cycle(x)
    if info.classification is Classification.ZERO_ABSORBING:
        return InverseResult(InverseKind.NOT_INVERTIBLE, None)
    return InverseResult(InverseKind.SPURIOUS, spurious_inverse(x, info))


@dataclass(frozen=True)
class CensusResult:
    dim: int
    samples: int
    invertible: int
    shortcut_failures: int

    @property
    def fraction(self) -> float:
        return self.invertible / self.samples

    @property
    def shortcut_failure_rate(self) -> float:
        return self.shortcut_failures / self.invertible if self.invertible else 0.0


def expected_invertible_fraction(n: int) -> float:
    """prod_{i=1..n} (1 - 256^-i), the share of GL(n) in M(n)."""
    return math.prod(1 - Q ** (-i) for i in range(1, n + 1))


def census(n: int, samples: int, rng: SeededRng, chunk: int = 20000) -> CensusResult:
    """Monte Carlo count of generators, plus how often the shortcut misses."""
    if n < 1:
        raise BadDimension(f"dimension must be >= 1, got {n}")
    if samples < 1:
        raise BadSampleCount(f"need at least one sample, got {samples}")
    invertible = failures = 0
    limit = limit_exponent(n)
    eye = np.eye(n, dtype=np.uint8)
    done = 0
    while done < samples:
        stack = batch.random_stack(min(chunk, samples - done), n, rng)
        done += len(stack)
        is_id = (batch.batch_pow(stack, cycle_exponent(n)) == eye).all(axis=(1, 2))
        invertible += int(is_id.sum())
        good = stack[is_id]
        cand = batch.batch_pow(good, limit)
        ok = (batch.batch_mul(cand, good) == eye).all(axis=(1, 2))
        failures += int((~ok).sum())
    return CensusResult(n, samples, invertible, failures)


def generator_census(n: int, samples: int, rng: SeededRng) -> float:
    """Fraction of random n x n elements whose powers reach the identity."""
    return census(n, samples, rng).fraction
