from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfkit.errors import DimensionError
from hopfkit.exactlin import (
    Matrix,
    Subspace,
    Tensor3,
    format_rational,
    kernel_basis,
    parse_rational,
    rank,
    solve_linear,
    span_contains,
)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    # bias towards zeros so rank deficiency is common
    entry = st.one_of(st.just(F(0)), rationals)
    return [[draw(entry) for _ in range(c)] for _ in range(r)]


def to_sympy(rows):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows])


# examples ------------------------------------------------------------------

def test_solve_identity():
    assert solve_linear(Matrix.identity(2), (3, 5)) == (3, 5)


def test_solve_inconsistent():
    assert solve_linear(Matrix.from_rows([[1, 1], [1, 1]]), (1, 0)) is None


def test_solve_exact_division():
    assert solve_linear(Matrix.from_rows([[2]]), (1,)) == (F(1, 2),)


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionError):
        solve_linear(Matrix.identity(2), (1, 2, 3))


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(2)) == []
    (v,) = kernel_basis(Matrix.from_rows([[1, 1]]))
    assert v[0] == -v[1] != 0
    ker = kernel_basis(Matrix.zeros(2, 3))
    assert len(ker) == 3 and rank(Matrix.from_rows(ker)) == 3


def test_rank_examples():
    assert rank(Matrix.identity(4)) == 4
    assert rank(Matrix.from_rows([[1, 2], [2, 4]])) == 1
    assert rank(Matrix.zeros(3, 2)) == 0


def test_span_contains_examples():
    assert span_contains([(1, 0)], (2, 0)) == (True, (2,))
    assert span_contains([(1, 0)], (0, 1)) == (False, None)
    assert span_contains([(1, 1), (1, -1)], (0, 1)) == (True, (F(1, 2), F(-1, 2)))


def test_span_contains_length_mismatch():
    with pytest.raises(DimensionError):
        span_contains([(1, 0)], (1, 0, 0))


def test_rational_text_round_trip():
    for text in ("0", "-3", "7/2", "-1/3"):
        assert format_rational(parse_rational(text)) == text
    with pytest.raises(ValueError):
        parse_rational("0.5")


def test_inverse_and_power():
    A = Matrix.from_rows([[0, -1], [1, 0]])
    assert A.inverse() == A.power(3)
    assert A.power(4).is_identity()
    assert Matrix.from_rows([[1, 2], [2, 4]]).inverse() is None


def test_dense_and_sparse_storage_agree():
    sparse = Matrix(3, 3, {(0, 0): F(1)})
    dense = Matrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 10]])
    assert not sparse.is_dense and dense.is_dense
    assert (dense @ sparse).column(0) == dense.column(0)


def test_tensor_permutation_round_trip():
    T = Tensor3((2, 3, 4), {(0, 1, 2): F(1), (1, 2, 3): F(-2)})
    assert T.permuted((1, 2, 0)).permuted((2, 0, 1)) == T
    assert T.permuted((1, 2, 0))[1, 2, 0] == 1


def test_subspace_coordinates():
    S = Subspace.span([(1, 1, 0), (0, 1, 1)], 3)
    assert S.dim == 2
    v = (2, 5, 3)
    assert S.element(S.coords(v)) == v
    assert not S.contains((1, 0, 0))


# properties ----------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_plus_nullity(rows):
    A = Matrix.from_rows(rows)
    ker = kernel_basis(A)
    assert rank(A) + len(ker) == A.cols
    for v in ker:
        assert not any(A.apply(v))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(rows):
    assert rank(Matrix.from_rows(rows)) == to_sympy(rows).rank()


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_solution_substitutes_back(rows, data):
    A = Matrix.from_rows(rows)
    b = tuple(data.draw(rationals) for _ in range(A.rows))
    x = solve_linear(A, b)
    augmented = [row + [bi] for row, bi in zip(rows, b)]
    solvable = to_sympy(augmented).rank() == to_sympy(rows).rank()
    assert (x is not None) == solvable
    if x is not None:
        assert A.apply(x) == b


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_kernel_is_deterministic_and_reduced(rows):
    A = Matrix.from_rows(rows)
    first, second = kernel_basis(A), kernel_basis(Matrix.from_rows(rows))
    assert first == second
    # each basis vector has a distinct free coordinate equal to 1 where the others vanish
    for i, v in enumerate(first):
        free = [j for j in range(A.cols) if v[j] == 1 and all(w[j] == 0 for k, w in enumerate(first) if k != i)]
        assert free


@settings(max_examples=40, deadline=None)
@given(matrices(max_rows=4, max_cols=4), st.integers(1, 4), st.data())
def test_product_matches_sympy(a, cols, data):
    b = [[data.draw(rationals) for _ in range(cols)] for _ in range(len(a[0]))]
    got = (Matrix.from_rows(a) @ Matrix.from_rows(b)).to_rows()
    assert to_sympy(got) == to_sympy(a) * to_sympy(b)
