"""Matrices over the AES field GF(256) and the AAG key exchange built on them."""

from .aag import (
    GeneratorWord,
    PublicParams,
    Role,
    commutator_oracle,
    conjugate,
    eval_word,
    random_word,
    run_session,
)
from .matrix import (
    AerMatrix,
    cardinality,
    identity,
    mat_add,
    mat_mul,
    mat_pow,
    random_matrix,
    render_views,
    tensor_det,
    zero,
)
from .order import (
    Classification,
    CycleInfo,
    InverseKind,
    InverseResult,
    brent_cycle,
    classify,
    floyd_cycle,
    inverse_shortcut,
    multiplicative_order,
    order_by_divisors,
    verified_inverse,
)
from .rng import SeededRng

__version__ = "0.1.0"
