import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aer import published, batch, field
from aer.errors import BadDimension, DimensionMismatch, MatrixParseError
from aer.matrix import (
    AerMatrix,
    _det_cofactor,
    _det_gauss,
    cardinality,
    identity,
    limit_exponent,
    mat_add,
    mat_mul,
    mat_pow,
    random_matrix,
    render_views,
    tensor_det,
    zero,
)
from aer.rng import SeededRng

import oracles

P = AerMatrix.parse


def matrices(n):
    return st.lists(st.integers(0, 255), min_size=n * n, max_size=n * n).map(
        lambda v: AerMatrix(n, tuple(v))
    )


any_dim = st.integers(1, 4).flatmap(matrices)


def test_identity_and_zero():
    assert identity(2) == P("{{1,0},{0,1}}")
    assert identity(1) == P("{{1}}")
    assert zero(2) == P("{{0,0},{0,0}}")
    assert zero(3).entries == (0,) * 9
    for make in (identity, zero):
        with pytest.raises(BadDimension):
            make(0)


def test_text_round_trip():
    x = P("{{183, 62}, {77, 50}}")
    assert x.rows() == [[183, 62], [77, 50]]
    assert str(x) == "{{183,62},{77,50}}"
    assert P(str(x)) == x


@pytest.mark.parametrize("bad", ["{{1,2},{3}}", "[[1,2],[3,4]]", "{{1,x},{3,4}}", "{{1,2},{3,256}}"])
def test_parse_rejects(bad):
    with pytest.raises(MatrixParseError):
        P(bad)


def test_mat_add():
    x = P("{{183,62},{77,50}}")
    assert mat_add(x, zero(2)) == x
    assert mat_add(x, x) == zero(2)
    assert mat_add(x, P("{{183,0},{0,0}}")) == P("{{0,62},{77,50}}")
    with pytest.raises(DimensionMismatch):
        mat_add(x, zero(3))


def test_mat_mul_examples():
    x = P("{{183,62},{77,50}}")
    assert mat_mul(identity(2), x) == x
    a3 = P("{{67,137},{220,106}}")
    assert mat_mul(a3, a3) == P("{{157,61},{184,176}}")
    b1 = P("{{88,183},{153,25}}")
    assert mat_mul(mat_mul(b1, b1), b1) == P("{{105,152},{218,62}}")
    with pytest.raises(DimensionMismatch):
        mat_mul(x, identity(3))


@given(any_dim, st.data())
def test_mat_mul_matches_oracle(x, data):
    y = data.draw(matrices(x.dim))
    assert mat_mul(x, y).rows() == oracles.matmul(x.rows(), y.rows())


def test_mat_pow_examples():
    t = published.SPURIOUS_BASE
    assert mat_pow(t, 1) == t
    assert mat_pow(t, 0) == identity(2)
    assert mat_pow(t, 2) == P("{{110,217},{146,87}}")
    a5 = P("{{237,239},{211,252}}")
    assert mat_pow(a5, 2**32 - 2) == P("{{139,111},{158,137}}")


@given(matrices(2), st.integers(0, 2**40), st.integers(0, 2**40))
def test_pow_is_additive_in_exponent(x, a, b):
    assert mat_pow(x, a + b) == mat_mul(mat_pow(x, a), mat_pow(x, b))


@given(matrices(2), st.integers(0, 40))
def test_pow_matches_repeated_products(x, e):
    expected = identity(2).rows() if e == 0 else oracles.powers(x.rows(), e)[-1]
    assert mat_pow(x, e).rows() == expected


@settings(max_examples=300)
@given(st.integers(2, 3).flatmap(lambda n: st.tuples(matrices(n), matrices(n), matrices(n))))
def test_ring_axioms(xyz):
    x, y, z = xyz
    assert mat_mul(mat_mul(x, y), z) == mat_mul(x, mat_mul(y, z))
    assert mat_mul(x, mat_add(y, z)) == mat_add(mat_mul(x, y), mat_mul(x, z))
    assert mat_mul(mat_add(y, z), x) == mat_add(mat_mul(y, x), mat_mul(z, x))


def test_non_commutative_witness():
    rng = SeededRng(11)
    for _ in range(100):
        x, y = random_matrix(2, rng), random_matrix(2, rng)
        if mat_mul(x, y) != mat_mul(y, x):
            return
    pytest.fail("no non-commuting pair in 100 draws")


def test_tensor_det_examples():
    for n in (1, 2, 3, 5):
        assert tensor_det(identity(n)) == 1
    assert tensor_det(published.SPURIOUS_BASE) == 0
    x = published.EXPECTED["x"]
    assert tensor_det(x) == oracles.det_leibniz(x.rows()) == 220
    assert tensor_det(published.EXPECTED["y"]) == 130


@given(st.integers(1, 5).flatmap(matrices))
def test_tensor_det_matches_leibniz(x):
    assert tensor_det(x) == oracles.det_leibniz(x.rows())
    assert _det_cofactor(x.rows()) == _det_gauss(x.rows())


@settings(max_examples=300)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(matrices(n), matrices(n))))
def test_det_is_multiplicative(xy):
    x, y = xy
    assert tensor_det(mat_mul(x, y)) == field.mul(tensor_det(x), tensor_det(y))


def test_random_matrix_stream_contract():
    a = random_matrix(2, SeededRng(42))
    assert a == random_matrix(2, SeededRng(42))
    r = SeededRng(42)
    stream = SeededRng(42).read(12)
    assert random_matrix(2, r).entries == tuple(stream[:4])
    assert random_matrix(2, r).entries == tuple(stream[4:8])
    with pytest.raises(BadDimension):
        random_matrix(0, r)


def test_random_matrix_bytes_are_uniform():
    # 1e5 draws, 256 bins: each count within 4 sigma of the binomial mean
    n = 100_000
    stack = batch.random_stack(n, 2, SeededRng(7)).reshape(n, 4)
    mean = n / 256
    sigma = (n * (1 / 256) * (255 / 256)) ** 0.5
    for pos in range(4):
        counts = np.bincount(stack[:, pos], minlength=256)
        assert np.all(np.abs(counts - mean) <= 4 * sigma)


def test_random_stack_matches_random_matrix():
    stack = batch.random_stack(5, 3, SeededRng(3))
    r = SeededRng(3)
    for m in stack:
        assert tuple(m.ravel()) == random_matrix(3, r).entries


@given(st.integers(2, 3).flatmap(lambda n: st.tuples(matrices(n), matrices(n))), st.integers(0, 300))
def test_batch_ops_match_scalar(xy, e):
    x, y = xy
    n = x.dim
    a = np.array([x.rows()], dtype=np.uint8)
    b = np.array([y.rows()], dtype=np.uint8)
    assert batch.batch_mul(a, b)[0].tolist() == mat_mul(x, y).rows()
    assert batch.batch_pow(a, e)[0].tolist() == mat_pow(x, e).rows()


def test_cardinality():
    assert cardinality(1) == "256"
    assert cardinality(2) == "4294967296"
    s = cardinality(3)
    assert s.startswith("4722366482869645") and len(s) == 22
    with pytest.raises(BadDimension):
        cardinality(0)
    assert limit_exponent(2) == 2**32 - 2


def test_render_views_table_one():
    v = render_views(P("{{183,62},{77,50}}"))
    assert v["decimal"] == "{{183,62},{77,50}}"
    assert v["tensor"] == (
        "{{{1,1,1,0,1,1,0,1}, {0,1,1,1,1,1,0,0}}, {{1,0,1,1,0,0,1,0}, {0,1,0,0,1,1,0,0}}}"
    )
    assert v["polynomial"] == "{{1+x+x^2+x^4+x^5+x^7, x+x^2+x^3+x^4+x^5}, {1+x^2+x^3+x^6, x+x^4+x^5}}"
    assert render_views(zero(1))["polynomial"] == "{{0}}"


def test_operators():
    x, y = published.SET_A[0], published.SET_A[1]
    assert x @ y == mat_mul(x, y)
    assert x + y == mat_add(x, y)
    assert x ** 5 == mat_pow(x, 5)
