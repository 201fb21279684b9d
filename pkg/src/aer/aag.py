"""Anshel-Anshel-Goldfeld key exchange over M[F256, n].

Alice's secret is a word x = f(a_1..a_k) in the public set A, Bob's a word
y = g(b_1..b_m) in B. Each conjugates the *other* public set by its secret
and sends it over; both end with the commutator x^-1 y^-1 x y.

Negative exponents inside words are evaluated as powers of the limit
exponent 256^(n^2) - 2, which is what the published worked example does.
Only the private element and Bob's pre-key go through verified inversion.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .errors import (
    BadParameters,
    DimensionMismatch,
    IndexOutOfRange,
    KeyInversionFailed,
    NotAnInverse,
    NotInvertible,
    PrivateElementSingular,
)
from .matrix import AerMatrix, identity, limit_exponent, mat_mul, mat_pow, random_matrix, tensor_det
from .order import InverseKind, verified_inverse
from .rng import SeededRng

EXPONENTS = (-3, -2, -1, 1, 2, 3)


class Role(enum.Enum):
    ALICE = "alice"
    BOB = "bob"


@dataclass(frozen=True)
class GeneratorWord:
    """Formal product of (1-based index, nonzero exponent) factors."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple((int(i), int(e)) for i, e in self.factors))
        for i, e in self.factors:
            if i < 1:
                raise IndexOutOfRange(f"generator index {i} < 1")
            if e == 0:
                raise BadParameters("word exponents must be nonzero")

    def __len__(self) -> int:
        return len(self.factors)

    def render(self, symbol: str = "a") -> str:
        if not self.factors:
            return "1"
        return " . ".join(
            f"{symbol}{i}" if e == 1 else f"({symbol}{i})^{e}" for i, e in self.factors
        )


@dataclass(frozen=True)
class PublicParams:
    dim: int
    set_a: tuple[AerMatrix, ...]
    set_b: tuple[AerMatrix, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "set_a", tuple(self.set_a))
        object.__setattr__(self, "set_b", tuple(self.set_b))
        if not self.set_a or not self.set_b:
            raise BadParameters("public sets must be non-empty")
        for m in self.set_a + self.set_b:
            if m.dim != self.dim:
                raise DimensionMismatch(f"public element of dim {m.dim} in a dim {self.dim} set")

    @classmethod
    def random(cls, dim: int, k: int, m: int, rng: SeededRng) -> PublicParams:
        if k < 1 or m < 1:
            raise BadParameters("public sets must be non-empty")
        set_a = [random_matrix(dim, rng) for _ in range(k)]
        set_b = [random_matrix(dim, rng) for _ in range(m)]
        return cls(dim, tuple(set_a), tuple(set_b))


TranscriptValue = Union[AerMatrix, tuple[AerMatrix, ...]]


@dataclass
class Transcript:
    """Named intermediate values in the order the worked example prints them."""

    entries: list[tuple[str, TranscriptValue]] = field(default_factory=list)

    def add(self, name: str, value) -> None:
        if not isinstance(value, AerMatrix):
            value = tuple(value)
        self.entries.append((name, value))

    def __getitem__(self, name: str) -> TranscriptValue:
        for k, v in self.entries:
            if k == name:
                return v
        raise KeyError(name)

    def names(self) -> list[str]:
        return [k for k, _ in self.entries]

    def format(self) -> str:
        return "\n".join(f"{k} = {format_value(v)}" for k, v in self.entries)


def format_value(v: TranscriptValue) -> str:
    if isinstance(v, AerMatrix):
        return str(v)
    return "{" + ", ".join(map(str, v)) + "}"


@dataclass
class PartyState:
    role: Role
    params: PublicParams
    word: GeneratorWord
    private_element: AerMatrix
    private_inverse: AerMatrix
    factor_values: list[AerMatrix]
    outgoing_commit: Optional[list[AerMatrix]] = None
    derived_key: Optional[AerMatrix] = None
    # Bob only: the commutator's inverse before the final inversion
    pre_key: Optional[AerMatrix] = None
    received_factor_values: list[AerMatrix] = field(default_factory=list)
    received_product: Optional[AerMatrix] = None

    @property
    def own_set(self) -> tuple[AerMatrix, ...]:
        return self.params.set_a if self.role is Role.ALICE else self.params.set_b

    @property
    def other_set(self) -> tuple[AerMatrix, ...]:
        return self.params.set_b if self.role is Role.ALICE else self.params.set_a


def _factor_value(g: AerMatrix, e: int) -> AerMatrix:
    if e > 0:
        return mat_pow(g, e)
    return mat_pow(mat_pow(g, limit_exponent(g.dim)), -e)


def eval_word(
    word: GeneratorWord,
    gens: Sequence[AerMatrix],
    factor_values: Optional[list[AerMatrix]] = None,
) -> AerMatrix:
    """Left-to-right product of the word's factors over ``gens``.

    If ``factor_values`` is given, each evaluated factor is appended to it.
    """
    if not gens:
        raise BadParameters("empty generator set")
    n = gens[0].dim
    if any(g.dim != n for g in gens):
        raise DimensionMismatch("generator set mixes dimensions")
    acc = None
    for i, e in word.factors:
        if i > len(gens):
            raise IndexOutOfRange(f"index {i} outside a set of {len(gens)}")
        v = _factor_value(gens[i - 1], e)
        if factor_values is not None:
            factor_values.append(v)
        acc = v if acc is None else mat_mul(acc, v)
    return identity(n) if acc is None else acc


def conjugate(g: AerMatrix, x: AerMatrix, x_inv: AerMatrix) -> AerMatrix:
    """g^x = x^-1 g x."""
    if mat_mul(x_inv, x) != identity(x.dim):
        raise NotAnInverse("x_inv * x is not the identity")
    return mat_mul(mat_mul(x_inv, g), x)


def make_party(role: Role, params: PublicParams, word: GeneratorWord) -> PartyState:
    gens = params.set_a if role is Role.ALICE else params.set_b
    factors: list[AerMatrix] = []
    secret = eval_word(word, gens, factors)
    if tensor_det(secret) == 0:
        raise PrivateElementSingular(f"{role.value}'s private element {secret} is singular")
    inv = verified_inverse(secret)
    assert inv.kind is InverseKind.VERIFIED and inv.value is not None
    return PartyState(role, params, word, secret, inv.value, factors)


def commit(state: PartyState) -> list[AerMatrix]:
    """Conjugate the other party's public set by our secret."""
    x, x_inv = state.private_element, state.private_inverse
    state.outgoing_commit = [mat_mul(mat_mul(x_inv, g), x) for g in state.other_set]
    return state.outgoing_commit


def derive_key(state: PartyState, received: Sequence[AerMatrix]) -> AerMatrix:
    own = state.own_set
    if len(received) != len(own):
        raise BadParameters(f"expected {len(own)} conjugates, got {len(received)}")
    if any(m.dim != state.params.dim for m in received):
        raise DimensionMismatch("received conjugate of the wrong dimension")
    state.received_factor_values = []
    product = eval_word(state.word, received, state.received_factor_values)
    state.received_product = product
    if state.role is Role.ALICE:
        # x^-1 (y^-1 x y)
        key = mat_mul(state.private_inverse, product)
    else:
        # (y^-1 x^-1 y x)^-1
        state.pre_key = mat_mul(state.private_inverse, product)
        inv = verified_inverse(state.pre_key)
        if inv.kind is not InverseKind.VERIFIED:
            raise KeyInversionFailed(f"pre-key {state.pre_key} is not invertible")
        key = inv.value
    state.derived_key = key
    return key


def _true_inverse(m: AerMatrix) -> AerMatrix:
    inv = verified_inverse(m)
    if inv.kind is not InverseKind.VERIFIED:
        raise NotInvertible(f"{m} has no inverse")
    return inv.value


def commutator_oracle(x: AerMatrix, y: AerMatrix) -> AerMatrix:
    """[x, y] = x^-1 y^-1 x y, computed directly."""
    x_inv, y_inv = _true_inverse(x), _true_inverse(y)
    return mat_mul(mat_mul(mat_mul(x_inv, y_inv), x), y)


def random_word(set_size: int, length: int, rng: SeededRng) -> GeneratorWord:
    """Uniform indices in [1, set_size], exponents uniform over +-1..3."""
    if set_size < 1 or length < 1:
        raise BadParameters("set_size and length must be >= 1")
    factors = []
    for _ in range(length):
        i = rng.below(set_size) + 1
        e = EXPONENTS[rng.below(len(EXPONENTS))]
        factors.append((i, e))
    return GeneratorWord(tuple(factors))


@dataclass
class SessionResult:
    key_alice: AerMatrix
    key_bob: AerMatrix
    transcript: Transcript
    alice: PartyState
    bob: PartyState


def session_transcript(params: PublicParams, alice: PartyState, bob: PartyState) -> Transcript:
    t = Transcript()
    t.add("A", params.set_a)
    t.add("B", params.set_b)
    for i, v in enumerate(alice.factor_values, 1):
        t.add(f"x{i}", v)
    t.add("x", alice.private_element)
    t.add("invx", alice.private_inverse)
    t.add("APrime", alice.outgoing_commit)
    for i, v in enumerate(bob.factor_values, 1):
        t.add(f"y{i}", v)
    t.add("y", bob.private_element)
    t.add("iny", bob.private_inverse)
    t.add("BPrime", bob.outgoing_commit)
    for i, v in enumerate(alice.received_factor_values, 1):
        t.add(f"xprime{i}", v)
    t.add("xprime", alice.received_product)
    t.add("KEYalice", alice.derived_key)
    for i, v in enumerate(bob.received_factor_values, 1):
        t.add(f"yprime{i}", v)
    t.add("yprime", bob.received_product)
    t.add("invKey", bob.pre_key)
    t.add("KEYbob", bob.derived_key)
    return t


def run_session(params: PublicParams, word_a: GeneratorWord, word_b: GeneratorWord) -> SessionResult:
    """Both roles in one process; raises on singular draws."""
    alice = make_party(Role.ALICE, params, word_a)
    bob = make_party(Role.BOB, params, word_b)
    a_prime = commit(alice)
    b_prime = commit(bob)
    key_a = derive_key(alice, b_prime)
    key_b = derive_key(bob, a_prime)
    return SessionResult(key_a, key_b, session_transcript(params, alice, bob), alice, bob)


@dataclass(frozen=True)
class SessionConfig:
    dim: int = 2
    set_size: int = 100
    word_len: int = 8
    seed: int = 0
    max_attempts: int = 16


@dataclass
class RandomSession:
    params: PublicParams
    word_a: GeneratorWord
    word_b: GeneratorWord
    result: Optional[SessionResult]
    aborted: int  # attempts lost to singular draws before success (or giving up)

    @property
    def completed(self) -> bool:
        return self.result is not None


def draw_session(config: SessionConfig, rng: SeededRng) -> RandomSession:
    """Random public sets, then fresh word pairs until a session completes."""
    params = PublicParams.random(config.dim, config.set_size, config.set_size, rng)
    aborted = 0
    word_a = word_b = GeneratorWord()
    for _ in range(config.max_attempts):
        word_a = random_word(config.set_size, config.word_len, rng)
        word_b = random_word(config.set_size, config.word_len, rng)
        try:
            result = run_session(params, word_a, word_b)
        except (PrivateElementSingular, KeyInversionFailed):
            aborted += 1
            continue
        return RandomSession(params, word_a, word_b, result, aborted)
    return RandomSession(params, word_a, word_b, None, aborted)
