import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crossmod.errors import ArgumentError
from crossmod.lattice import (
    FGAbelianGroup,
    IntMatrix,
    cokernel_invariants,
    determinant,
    diagonal,
    distinct_nonzero_columns,
    in_column_lattice,
    inverse_unimodular,
    is_smith_form,
    kernel_lattice,
    lattice_membership,
    parse_matrix,
    smith_normal_form,
    smith_normal_form_full,
    solve_integer,
    subquotient_invariants,
)
from oracles import det_laplace, invariant_factors_by_minors

entries = st.integers(-10, 10)


@st.composite
def matrices(draw, max_dim=6):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r))
    return IntMatrix.from_rows(rows, c)


def test_known_smith_form():
    A = IntMatrix.from_rows([[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]])
    U, D, V = smith_normal_form(A)
    assert diagonal(D) == [1, 10, 30, 0]
    assert U @ A @ V == D


def test_zero_and_empty_shapes():
    Z = IntMatrix.zeros(2, 3)
    U, D, V = smith_normal_form(Z)
    assert D == Z and U @ Z @ V == D
    assert cokernel_invariants(Z) == FGAbelianGroup(2)
    assert cokernel_invariants(IntMatrix.zeros(2, 0)) == FGAbelianGroup(2)


def test_negative_pivots_normalised():
    U, D, V = smith_normal_form(IntMatrix.from_rows([[-3]]))
    assert diagonal(D) == [3]


def test_fg_abelian_canonical():
    assert FGAbelianGroup.from_torsion([4, 6]) == FGAbelianGroup(0, (2, 12))
    assert FGAbelianGroup.from_torsion([1, 1]).is_trivial
    assert str(FGAbelianGroup(2, (2,))) == "Z^2 + Z/2"
    with pytest.raises(ArgumentError):
        FGAbelianGroup(0, (4, 2))


def test_parse_matrix_roundtrip():
    A = IntMatrix.from_rows([[1, -2, 3], [0, 4, 5]])
    assert parse_matrix(A.format()) == A
    with pytest.raises(ArgumentError):
        parse_matrix("2 2\n1 2 3")


def test_kernel_and_solve():
    A = IntMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    K = kernel_lattice(A)
    assert K.cols == 2 and (A @ K).is_zero()
    B = IntMatrix.from_rows([[2], [4]])
    X = solve_integer(A, B)
    assert X is not None and A @ X == B
    assert solve_integer(IntMatrix.from_rows([[2]]), IntMatrix.from_rows([[1]])) is None


def test_membership_and_subquotient():
    A = IntMatrix.from_rows([[2, 0], [0, 3]])
    member = lattice_membership(A)
    assert member((4, 9)) and not member((1, 0))
    assert in_column_lattice(A, (2, 3))
    # (Z + Z) / (2Z + 3Z), viewed inside the full lattice
    assert subquotient_invariants(A, IntMatrix.identity(2)) == FGAbelianGroup(0, (6,))


def test_distinct_columns_same_lattice():
    A = IntMatrix.from_columns([[1, 2], [0, 0], [1, 2], [3, 1]], 2)
    B = distinct_nonzero_columns(A)
    assert B.cols == 2
    assert cokernel_invariants(A) == cokernel_invariants(B)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_properties(A):
    U, D, V, Uinv = smith_normal_form_full(A)
    assert U @ A @ V == D
    assert is_smith_form(D)
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    assert U @ Uinv == IntMatrix.identity(A.rows)
    d = [v for v in diagonal(D) if v]
    assert all(b % a == 0 for a, b in zip(d, d[1:]))


@settings(max_examples=100, deadline=None)
@given(matrices(max_dim=4))
def test_snf_matches_minor_gcds(A):
    _, D, _ = smith_normal_form(A)
    assert diagonal(D) == invariant_factors_by_minors(A.tolist())


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(entries, min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_determinant_oracle(rows):
    A = IntMatrix.from_rows(rows)
    assert determinant(A) == det_laplace(rows)


@settings(max_examples=60, deadline=None)
@given(matrices(max_dim=5))
def test_kernel_lattice_is_saturated(A):
    K = kernel_lattice(A)
    assert (A @ K).is_zero()
    # rank-nullity over Q
    assert K.cols == A.cols - np.linalg.matrix_rank(np.array(A.tolist(), dtype=float))
    if K.cols:
        # primitive: the cokernel of K in Z^cols is torsion free
        assert not cokernel_invariants(K).torsion


def test_inverse_unimodular():
    U = IntMatrix.from_rows([[2, 1], [1, 1]])
    assert U @ inverse_unimodular(U) == IntMatrix.identity(2)
