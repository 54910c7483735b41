from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sgcoh.errors import UsageError
from sgcoh.exactla import (
    ExactMatrix,
    PrimeField,
    RationalField,
    Subspace,
    coset_reduce,
    kernel_image,
    parse_field_spec,
    rank_of,
)

Q = RationalField()
F5 = PrimeField(5)


def test_field_specs():
    assert parse_field_spec("rational").key == "rational"
    assert parse_field_spec("fp:7").characteristic == 7
    with pytest.raises(UsageError):
        parse_field_spec("fp:6")
    with pytest.raises(UsageError):
        parse_field_spec("real")
    with pytest.raises(UsageError):
        parse_field_spec("fp:x")


def test_prime_field_arithmetic():
    two = F5.scalar(2)
    three = F5.scalar(3)
    assert not (two + three)
    assert (two * three).v == 1
    assert (two - three).v == 4
    assert (two / three).v == 4
    assert F5.scalar(Fraction(1, 2)).v == 3
    with pytest.raises(UsageError):
        F5.scalar(Fraction(1, 5))


def test_rational_coercion():
    assert Q.scalar(3) == Fraction(3)
    assert Q.scalar("2/7") == Fraction(2, 7)
    with pytest.raises(UsageError):
        Q.scalar(0.5)


def _matrix(field, rows):
    mat = ExactMatrix(len(rows), len(rows[0]) if rows else 0)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if x:
                mat.set(i, j, field.scalar(x))
    return mat


def test_matrix_apply_and_views():
    mat = _matrix(Q, [[1, 2], [0, 3]])
    out = mat.apply({0: Fraction(1), 1: Fraction(1)})
    assert out == {0: Fraction(3), 1: Fraction(3)}
    assert mat.columns() == [{0: Fraction(1)}, {0: Fraction(2), 1: Fraction(3)}]
    assert mat.rows() == [{0: Fraction(1), 1: Fraction(2)}, {1: Fraction(3)}]
    mat.add_to(0, 0, Fraction(-1))
    assert mat.get(0, 0) is None


def test_subspace_reduce_is_canonical():
    space = Subspace.from_vectors(
        Q, [{0: Fraction(1), 1: Fraction(1)}, {1: Fraction(1), 2: Fraction(1)}]
    )
    assert space.rank == 2
    assert space.contains({0: Fraction(1), 2: Fraction(-1)})
    residue = coset_reduce({0: Fraction(1)}, space)
    # reducing the residue again changes nothing
    assert coset_reduce(residue, space) == residue
    assert not space.contains({0: Fraction(1)})


def test_kernel_image_small():
    mat = _matrix(Q, [[1, 2], [2, 4]])
    kernel, image = kernel_image(mat, Q)
    assert image.rank == 1
    assert kernel == [{0: Fraction(-2), 1: Fraction(1)}]
    assert not mat.apply(kernel[0])


def test_kernel_image_prime_field():
    mat = _matrix(F5, [[1, 2], [2, 4]])
    kernel, image = kernel_image(mat, F5)
    assert image.rank == 1
    assert len(kernel) == 1
    assert not mat.apply(kernel[0])


@st.composite
def small_matrices(draw):
    nrows = draw(st.integers(1, 5))
    ncols = draw(st.integers(1, 5))
    rows = draw(
        st.lists(
            st.lists(st.integers(-3, 3), min_size=ncols, max_size=ncols),
            min_size=nrows,
            max_size=nrows,
        )
    )
    return rows


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rank_nullity(rows):
    mat = _matrix(Q, rows)
    kernel, image = kernel_image(mat, Q)
    assert image.rank + len(kernel) == mat.ncols
    for vec in kernel:
        assert not mat.apply(vec)


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rank_of_matches_subspace(rows):
    mat = _matrix(Q, rows)
    cols = [c for c in mat.columns() if c]
    assert rank_of(cols, Q) == Subspace.from_vectors(Q, cols).rank


@settings(max_examples=40, deadline=None)
@given(small_matrices())
def test_reduce_kills_exactly_the_span(rows):
    mat = _matrix(Q, rows)
    space = Subspace.from_vectors(Q, mat.columns())
    for col in mat.columns():
        assert space.contains(col)
    reduced = space.reduce({0: Fraction(1)})
    # membership of the residue difference
    diff = dict({0: Fraction(1)})
    for k, v in reduced.items():
        diff[k] = diff.get(k, Fraction(0)) - v
        if not diff[k]:
            del diff[k]
    assert space.contains(diff)
