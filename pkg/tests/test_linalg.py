import random
from fractions import Fraction

import pytest

from spectra_persist.errors import UsageError
from spectra_persist.fields import PrimeField, RationalField
from spectra_persist.linalg import (SparseMatrix, axpy, kernel, rank,
                                    subquotient_dim)

GF2 = PrimeField(2)
Q = RationalField()


def frac_col(entries):
    return [(r, Fraction(v)) for r, v in entries]


def test_axpy_cancellation():
    assert axpy(Q, frac_col([(0, 1)]), Fraction(-1), frac_col([(0, 1)])) == []


def test_axpy_disjoint_merge():
    got = axpy(Q, frac_col([(0, 1), (2, 1)]), Fraction(1), frac_col([(1, 1)]))
    assert got == frac_col([(0, 1), (1, 1), (2, 1)])


def test_axpy_gf2():
    got = axpy(GF2, [(0, 1), (1, 1)], 1, [(1, 1), (3, 1)])
    assert got == [(0, 1), (3, 1)]


def test_rank_identity_over_q():
    m = SparseMatrix(2, [frac_col([(0, 1)]), frac_col([(1, 1)])])
    assert rank(m, Q) == 2


def test_rank_zero_matrix():
    m = SparseMatrix(3, [[], [], [], []])
    assert rank(m, Q) == 0


def test_rank_equal_columns_gf2():
    m = SparseMatrix(2, [[(0, 1), (1, 1)], [(0, 1), (1, 1)]])
    assert rank(m, GF2) == 1


def test_subquotient_contained():
    e0 = SparseMatrix(2, [frac_col([(0, 1)])])
    assert subquotient_dim(e0, e0, Q) == 0


def test_subquotient_zero_denominator():
    num = SparseMatrix(2, [frac_col([(0, 1)]), frac_col([(1, 1)])])
    assert subquotient_dim(num, SparseMatrix(2, []), Q) == 2


def test_subquotient_diagonal_line():
    # span{e0 + e1} over span{e1} in ambient dim 2; frozen expectation 1
    # from brute-force elimination on the stacked 2x2 matrix.
    num = SparseMatrix(2, [frac_col([(0, 1), (1, 1)])])
    den = SparseMatrix(2, [frac_col([(1, 1)])])
    assert subquotient_dim(num, den, Q) == 1


def test_subquotient_mismatched_rows():
    with pytest.raises(UsageError):
        subquotient_dim(SparseMatrix(2, []), SparseMatrix(3, []), Q)


def test_malformed_column_rejected():
    with pytest.raises(UsageError):
        SparseMatrix(2, [[(1, 1), (0, 1)]])  # rows not increasing
    with pytest.raises(UsageError):
        SparseMatrix(1, [[(4, 1)]])  # out of range


def _random_matrix(rng, n_rows, n_cols, field, density=0.4):
    cols = []
    for _ in range(n_cols):
        col = []
        for r in range(n_rows):
            if rng.random() < density:
                if isinstance(field, PrimeField):
                    col.append((r, rng.randrange(1, field.p)))
                else:
                    col.append((r, Fraction(rng.randint(-4, 4) or 1)))
        cols.append(col)
    return SparseMatrix(n_rows, cols)


def test_rank_invariant_under_column_permutation_and_axpy():
    rng = random.Random(7)
    for trial in range(40):
        field = [GF2, PrimeField(5), Q][trial % 3]
        m = _random_matrix(rng, rng.randint(1, 8), rng.randint(1, 8), field)
        base = rank(m, field)
        cols = list(m.columns)
        rng.shuffle(cols)
        assert rank(SparseMatrix(m.n_rows, cols), field) == base
        if len(cols) >= 2:
            i, j = rng.sample(range(len(cols)), 2)
            c = field.normalize(rng.randint(1, 3))
            cols[i] = axpy(field, cols[i], c, cols[j])
            assert rank(SparseMatrix(m.n_rows, cols), field) == base


def test_subquotient_plus_denominator_rank_identity():
    rng = random.Random(11)
    for _ in range(40):
        field = PrimeField(5)
        n_rows = rng.randint(1, 8)
        a = _random_matrix(rng, n_rows, rng.randint(0, 6), field)
        b = _random_matrix(rng, n_rows, rng.randint(0, 6), field)
        stacked = SparseMatrix(n_rows, list(a.columns) + list(b.columns))
        assert subquotient_dim(a, b, field) + rank(b, field) == rank(stacked, field)


def test_rank_over_q_matches_large_prime():
    # integer matrices: rank over Q agrees with rank mod 32003
    rng = random.Random(3)
    big = PrimeField(32003)
    for _ in range(25):
        n_rows, n_cols = rng.randint(1, 7), rng.randint(1, 7)
        entries = [[rng.randint(-5, 5) for _ in range(n_cols)] for _ in range(n_rows)]
        q_cols = [[(r, Fraction(entries[r][j])) for r in range(n_rows) if entries[r][j]]
                  for j in range(n_cols)]
        p_cols = [[(r, entries[r][j] % 32003) for r in range(n_rows)
                   if entries[r][j] % 32003] for j in range(n_cols)]
        assert rank(SparseMatrix(n_rows, q_cols), Q) == \
            rank(SparseMatrix(n_rows, p_cols), big)


def test_kernel_vectors_annihilate():
    rng = random.Random(5)
    for _ in range(30):
        field = [GF2, Q][rng.randint(0, 1)]
        m = _random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7), field)
        k = kernel(m, field)
        assert k.n_cols == m.n_cols - rank(m, field)
        for combo in k.columns:
            acc = []
            for j, v in combo:
                acc = axpy(field, acc, v, m.columns[j])
            assert acc == []
