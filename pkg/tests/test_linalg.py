from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lch.linalg import Matrix, smith_invariants
from lch.rings import QQ, Z2, ZZ, integers_mod


def det(rows):
    """Integer determinant by Laplace expansion (tiny matrices only)."""
    if not rows:
        return 1
    return sum((-1) ** j * rows[0][j] * det([r[:j] + r[j + 1:] for r in rows[1:]])
               for j in range(len(rows)) if rows[0][j])


def determinantal_invariants(rows, m, n):
    """Invariant factors from gcds of k x k minors: d_1...d_k = D_k."""
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for ri in itertools.combinations(range(m), k):
            for ci in itertools.combinations(range(n), k):
                g = math.gcd(g, det([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


int_matrices = st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                       min_size=m, max_size=m)))


@given(int_matrices)
def test_smith_matches_minors_oracle(rows):
    m, n = len(rows), len(rows[0])
    inv = smith_invariants(Matrix(ZZ, m, n, rows))
    assert inv == determinantal_invariants(rows, m, n)
    assert all(b % a == 0 for a, b in zip(inv, inv[1:]))


def test_smith_examples():
    assert smith_invariants(Matrix(ZZ, 1, 1, [[2]])) == [2]
    assert smith_invariants(Matrix(ZZ, 2, 2, [[2, 0], [0, 3]])) == [1, 6]
    assert smith_invariants(Matrix(ZZ, 2, 2, [[0, 0], [0, 0]])) == []
    with pytest.raises(ValueError):
        smith_invariants(Matrix(QQ, 1, 1, [[1]]))


field_matrices = st.sampled_from([Z2, integers_mod(3), QQ]).flatmap(
    lambda R: st.tuples(st.just(R), st.integers(1, 5), st.integers(1, 5)).flatmap(
        lambda t: st.tuples(st.just(t[0]), st.lists(
            st.lists(st.integers(-3, 3), min_size=t[2], max_size=t[2]),
            min_size=t[1], max_size=t[1]))))


@given(field_matrices)
def test_rank_nullity_and_nullspace(data):
    R, rows = data
    A = Matrix(R, len(rows), len(rows[0]), [[R(x) for x in r] for r in rows])
    null = A.nullspace()
    assert A.rank() + len(null) == A.ncols
    for v in null:
        assert all(x == 0 for x in A.apply(v))
    assert A.rank() == A.T.rank()


@given(field_matrices)
def test_solve_consistent(data):
    R, rows = data
    A = Matrix(R, len(rows), len(rows[0]), [[R(x) for x in r] for r in rows])
    x = [R(i + 1) for i in range(A.ncols)]
    b = A.apply(x)
    sol = A.solve(b)
    assert sol is not None and A.apply(sol) == b


def test_inverse_and_singular():
    A = Matrix(QQ, 2, 2, [[QQ(1), QQ(2)], [QQ(3), QQ(4)]])
    assert A @ A.inverse() == Matrix.identity(QQ, 2)
    assert A.inverse()[0, 0] == Fraction(-2)
    with pytest.raises(ZeroDivisionError):
        Matrix(Z2, 2, 2, [[1, 1], [1, 1]]).inverse()


def test_block_and_transpose():
    I = Matrix.identity(Z2, 2)
    B = Matrix.block(Z2, [2, 1], [2, 1], [[I, None], [None, Matrix(Z2, 1, 1, [[1]])]])
    assert B == Matrix.identity(Z2, 3)
    M = Matrix(ZZ, 2, 3, [[1, 2, 3], [4, 5, 6]])
    assert M.T.shape == (3, 2) and M.T[2, 1] == 6
    assert ZZ and (M @ M.T)[0, 0] == 14


def test_solve_inconsistent():
    A = Matrix(Z2, 2, 1, [[1], [1]])
    assert A.solve([1, 0]) is None
