"""Square matrices over GF(256): the algebraic extension ring M[F256, n].

Matrices are immutable; every operation returns a new :class:`AerMatrix`.
The text form ``{{a,b},{c,d}}`` (decimal bytes, row-major) is used for
parsing and printing everywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from . import field
from .errors import BadDimension, DimensionMismatch, MatrixParseError
from .rng import SeededRng

_MUL = field.MUL_ROWS


@dataclass(frozen=True)
class AerMatrix:
    dim: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise BadDimension(f"dimension must be >= 1, got {self.dim}")
        if len(self.entries) != self.dim * self.dim:
            raise BadDimension(
                f"{len(self.entries)} entries do not fill a {self.dim}x{self.dim} matrix"
            )
        if any(not 0 <= v <= 255 for v in self.entries):
            raise ValueError("entries must be bytes in [0, 255]")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> AerMatrix:
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise BadDimension("matrix must be square")
        return cls(n, tuple(int(v) for r in rows for v in r))

    @classmethod
    def parse(cls, text: str) -> AerMatrix:
        """Read the ``{{a,b},{c,d}}`` notation."""
        s = re.sub(r"\s+", "", text)
        if not (s.startswith("{{") and s.endswith("}}")):
            raise MatrixParseError(f"expected '{{{{...}},{{...}}}}', got {text!r}")
        rows = []
        for chunk in s[2:-2].split("},{"):
            try:
                rows.append([int(v) for v in chunk.split(",")])
            except ValueError:
                raise MatrixParseError(f"bad row {chunk!r} in {text!r}") from None
        try:
            return cls.from_rows(rows)
        except (BadDimension, ValueError) as exc:
            raise MatrixParseError(str(exc)) from None

    def rows(self) -> list[list[int]]:
        n = self.dim
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.dim + j]

    def __str__(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, r)) + "}" for r in self.rows()) + "}"

    def __add__(self, other: AerMatrix) -> AerMatrix:
        return mat_add(self, other)

    def __matmul__(self, other: AerMatrix) -> AerMatrix:
        return mat_mul(self, other)

    def __pow__(self, e: int) -> AerMatrix:
        return mat_pow(self, e)


def identity(n: int) -> AerMatrix:
    _check_dim(n)
    return AerMatrix(n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))


def zero(n: int) -> AerMatrix:
    _check_dim(n)
    return AerMatrix(n, (0,) * (n * n))


def _check_dim(n: int) -> None:
    if n < 1:
        raise BadDimension(f"dimension must be >= 1, got {n}")


def _same_dim(x: AerMatrix, y: AerMatrix) -> None:
    if x.dim != y.dim:
        raise DimensionMismatch(f"{x.dim}x{x.dim} vs {y.dim}x{y.dim}")


def mat_add(x: AerMatrix, y: AerMatrix) -> AerMatrix:
    _same_dim(x, y)
    return AerMatrix(x.dim, tuple(a ^ b for a, b in zip(x.entries, y.entries)))


def _mul_entries(n: int, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if n == 2:
        a0, a1, a2, a3 = a
        b0, b1, b2, b3 = b
        r0, r1, r2, r3 = _MUL[a0], _MUL[a1], _MUL[a2], _MUL[a3]
        return (r0[b0] ^ r1[b2], r0[b1] ^ r1[b3], r2[b0] ^ r3[b2], r2[b1] ^ r3[b3])
    cols = [b[j::n] for j in range(n)]
    out = []
    for i in range(n):
        row = [_MUL[v] for v in a[i * n:(i + 1) * n]]
        for col in cols:
            acc = 0
            for r, v in zip(row, col):
                acc ^= r[v]
            out.append(acc)
    return tuple(out)


def mat_mul(x: AerMatrix, y: AerMatrix) -> AerMatrix:
    _same_dim(x, y)
    return AerMatrix(x.dim, _mul_entries(x.dim, x.entries, y.entries))


def mat_prod(*ms: AerMatrix) -> AerMatrix:
    """Left-to-right product ``((m1 m2) m3) ...``."""
    return reduce(mat_mul, ms)


def mat_pow(x: AerMatrix, e: int) -> AerMatrix:
    """Left-to-right binary exponentiation; ``x**0`` is the identity.

    ``e`` may be arbitrarily large (the inverse shortcut uses 256**(n*n) - 2).
    """
    if e < 0:
        raise ValueError("negative exponent; use order.verified_inverse")
    n = x.dim
    base = x.entries
    acc = identity(n).entries
    for bit in bin(e)[2:]:
        acc = _mul_entries(n, acc, acc)
        if bit == "1":
            acc = _mul_entries(n, acc, base)
    return AerMatrix(n, acc)


def _det_cofactor(m: list[list[int]]) -> int:
    # characteristic 2: every Leibniz sign is +1
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return _MUL[m[0][0]][m[1][1]] ^ _MUL[m[0][1]][m[1][0]]
    det = 0
    for j, a in enumerate(m[0]):
        if a:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            det ^= _MUL[a][_det_cofactor(minor)]
    return det


def _det_gauss(m: list[list[int]]) -> int:
    m = [row[:] for row in m]
    n = len(m)
    det = 1
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c]), None)
        if pivot is None:
            return 0
        m[c], m[pivot] = m[pivot], m[c]  # a swap flips no sign here
        p = m[c][c]
        det = _MUL[det][p]
        p_inv = _MUL[field.inv(p)]
        for r in range(c + 1, n):
            f = m[r][c]
            if f:
                k = _MUL[p_inv[f]]
                m[r] = [a ^ k[b] for a, b in zip(m[r], m[c])]
    return det


def tensor_det(x: AerMatrix) -> int:
    """Determinant with field sum and product; zero iff ``x`` is singular."""
    rows = x.rows()
    if x.dim <= 3:
        return _det_cofactor(rows)
    return _det_gauss(rows)


def random_matrix(n: int, rng: SeededRng) -> AerMatrix:
    """Fill row-major from the next n*n bytes of ``rng``."""
    _check_dim(n)
    return AerMatrix(n, tuple(rng.read(n * n)))


def cardinality(n: int) -> str:
    """Exact decimal count of n x n matrices, 256**(n*n)."""
    _check_dim(n)
    return str(256 ** (n * n))


def limit_exponent(n: int) -> int:
    """The one-shot inverse exponent 256**(n*n) - 2."""
    _check_dim(n)
    return 256 ** (n * n) - 2


def _render(rows: Iterable[Iterable[str]]) -> str:
    return "{" + ", ".join("{" + ", ".join(r) + "}" for r in rows) + "}"


def render_views(x: AerMatrix) -> dict[str, str]:
    """Decimal, bit-tensor (LSB first) and polynomial renderings."""
    rows = x.rows()
    return {
        "decimal": str(x),
        "tensor": _render(
            ["{" + ",".join(map(str, field.to_bits(v))) + "}" for v in r] for r in rows
        ),
        "polynomial": _render([field.to_poly(v) for v in r] for r in rows),
    }
