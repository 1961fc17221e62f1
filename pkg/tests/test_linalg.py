import random
from fractions import Fraction

from ramops.linalg import (
    Echelon,
    SparseMatrix,
    quotient_basis,
    rank,
    rref,
    transpose,
    vec_add_scaled,
)


def dense(m, ncols):
    out = []
    for row in m.rows:
        out.append([row.get(c, Fraction(0)) for c in range(ncols)])
    return out


def ech_dense(e: Echelon):
    return [[row.get(c, Fraction(0)) for c in range(e.ncols)] for row in e.rows]


def test_rref_rank_one():
    m = SparseMatrix.from_dense([[1, 2], [2, 4]])
    e = rref(m)
    assert e.pivots == [0]
    assert ech_dense(e) == [[1, 2]]


def test_rref_identity_fixed():
    m = SparseMatrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    e = rref(m)
    assert e.pivots == [0, 1, 2]
    assert ech_dense(e) == dense(m, 3)


def test_rref_swap_case():
    # hand elimination: [[0,1],[1,0]] reduces to the identity
    m = SparseMatrix.from_dense([[0, 1], [1, 0]])
    e = rref(m)
    assert e.pivots == [0, 1]
    assert ech_dense(e) == [[1, 0], [0, 1]]


def test_rank_trivial_cases():
    assert rank(SparseMatrix(4)) == 0
    m = SparseMatrix.from_dense([[1 if i == j else 0 for j in range(5)] for i in range(5)])
    assert rank(m) == 5


def test_quotient_basis_trivial():
    basis, e = quotient_basis(SparseMatrix(3), 3)
    assert basis == [0, 1, 2]
    assert e.rank == 0
    ident = SparseMatrix.from_dense([[1, 0], [0, 1]])
    basis, e = quotient_basis(ident, 2)
    assert basis == []


def test_reduce_membership_and_idempotence():
    m = SparseMatrix.from_dense([[1, 2, 0], [0, 1, 1]])
    e = rref(m)
    v = {0: Fraction(1), 1: Fraction(2)}  # in the row space
    assert e.reduce(v) == {}
    w = {2: Fraction(5)}
    reduced = e.reduce(w)
    assert all(c not in e.pivots for c in reduced)
    assert e.reduce(reduced) == reduced


def test_reduce_no_pivot_support_unchanged():
    m = SparseMatrix.from_dense([[1, 0, 0]])
    e = rref(m)
    v = {1: Fraction(3), 2: Fraction(-2)}
    assert e.reduce(v) == v


def _random_matrix(rng, nrows, ncols, density=0.5):
    m = SparseMatrix(ncols)
    for _ in range(nrows):
        row = {
            c: Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            for c in range(ncols)
            if rng.random() < density
        }
        m.add_row(row)
    return m


def test_rank_equals_rank_of_transpose():
    rng = random.Random(7)
    for _ in range(25):
        m = _random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        assert rank(m) == rank(transpose(m))


def test_difference_lies_in_row_space():
    rng = random.Random(11)
    for _ in range(20):
        m = _random_matrix(rng, 5, 6)
        e = rref(m)
        v = {c: Fraction(rng.randint(-5, 5)) for c in range(6) if rng.random() < 0.7}
        diff = dict(v)
        vec_add_scaled(diff, e.reduce(v), Fraction(-1))
        assert e.contains(diff)


def test_row_space_preserved_by_rref():
    rng = random.Random(3)
    for _ in range(15):
        m = _random_matrix(rng, 4, 5)
        e = rref(m)
        # every original row reduces to zero against the echelon
        for row in m.rows:
            assert e.reduce(row) == {}
        # every echelon row lies in the span of the original rows
        e2 = rref(m)
        for row in e.rows:
            assert e2.reduce(row) == {}
        assert rank(m) == e.rank
