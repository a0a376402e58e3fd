import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diagcat import field as fm
from diagcat.field import ExactField, QQ, parse_field


def test_parse_field():
    assert parse_field("Q") == QQ
    assert parse_field("F5").p == 5
    assert parse_field("GF(7)").p == 7
    with pytest.raises(ValueError):
        parse_field("F4")  # not prime
    with pytest.raises(ValueError):
        parse_field("R")


def test_rref_examples():
    ident = fm.identity(QQ, 3)
    r, piv = fm.rref(QQ, ident)
    assert r == ident and piv == [0, 1, 2]

    m = fm.mat_of(QQ, [[1, 2], [2, 4]])
    r, piv = fm.rref(QQ, m)
    assert r == fm.mat_of(QQ, [[1, 2], [0, 0]]) and piv == [0]

    # rank oracle via determinant: det = 1*2 - 1*1 = 1, nonzero mod 2
    F2 = ExactField(2)
    m = fm.mat_of(F2, [[1, 1], [1, 2]])
    assert fm.det(F2, m) == 1
    assert fm.rank(F2, m) == 2


def test_kernel_examples():
    assert fm.kernel(QQ, fm.identity(QQ, 3)) == []
    assert len(fm.kernel(QQ, fm.zeros(QQ, 4, 4))) == 4
    basis = fm.kernel(QQ, fm.mat_of(QQ, [[1, 2]]))
    assert len(basis) == 1
    x = basis[0]
    assert x[0] + 2 * x[1] == 0 and x != [0, 0]


def test_solve_examples():
    b = [QQ.of(3), QQ.of(-1)]
    assert fm.solve_linear(QQ, fm.identity(QQ, 2), b) == b

    sol = fm.solve_linear(QQ, fm.mat_of(QQ, [[1, 1]]), [QQ.of(3)])
    assert sol is not None and sol[0] + sol[1] == 3

    assert fm.solve_linear(QQ, fm.mat_of(QQ, [[0]]), [QQ.of(1)]) is None

    with pytest.raises(ValueError):
        fm.solve_linear(QQ, fm.identity(QQ, 2), [QQ.of(1)])


def _random_matrix(field, rng, rows, cols):
    return [[field.of(rng.randint(-5, 5)) for _ in range(cols)] for _ in range(rows)]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([None, 5, 2]))
def test_rref_idempotent_and_rank_nullity(seed, p):
    rng = random.Random(seed)
    field = ExactField(p)
    rows, cols = rng.randint(1, 4), rng.randint(1, 4)
    m = _random_matrix(field, rng, rows, cols)
    r, piv = fm.rref(field, m)
    r2, piv2 = fm.rref(field, r)
    assert r == r2 and piv == piv2
    assert len(piv) + len(fm.kernel(field, m)) == cols
    for v in fm.kernel(field, m):
        assert all(x == field.zero() for x in fm.mat_vec(field, m, v))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([None, 5, 3]))
def test_solve_substitutes_exactly(seed, p):
    rng = random.Random(seed)
    field = ExactField(p)
    rows, cols = rng.randint(1, 4), rng.randint(1, 4)
    m = _random_matrix(field, rng, rows, cols)
    x = [field.of(rng.randint(-4, 4)) for _ in range(cols)]
    b = fm.mat_vec(field, m, x)
    sol = fm.solve_linear(field, m, b)
    assert sol is not None
    assert fm.mat_vec(field, m, sol) == b


def test_inverse_and_det():
    m = fm.mat_of(QQ, [[2, 1], [1, 1]])
    inv = fm.inverse(QQ, m)
    assert fm.mat_mul(QQ, m, inv) == fm.identity(QQ, 2)
    assert fm.det(QQ, m) == Fraction(1)
    with pytest.raises(ValueError):
        fm.inverse(QQ, fm.mat_of(QQ, [[1, 2], [2, 4]]))


def test_finite_field_ops():
    F7 = ExactField(7)
    assert F7.inv(3) == 5  # 3*5 = 15 = 1 mod 7
    assert F7.of(Fraction(1, 2)) == 4  # 2*4 = 1 mod 7
    g = F7.multiplicative_generator()
    assert sorted(pow(g, k, 7) for k in range(6)) == [1, 2, 3, 4, 5, 6]
