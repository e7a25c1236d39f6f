from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dglcalc import linalg
from dglcalc.errors import PreconditionError
from dglcalc.linalg import RationalMatrix


F = Fraction


def test_rank_zero_matrix():
    m = RationalMatrix(rows=3, cols=3, entries={})
    assert m.rank() == 0


def test_kernel_of_identity_is_empty():
    m = RationalMatrix.from_rows([[1, 0], [0, 1]])
    assert m.kernel_basis() == []


def test_solve_exact_rational_division():
    m = RationalMatrix.from_rows([[2]])
    x = m.solve([1])
    assert x == {0: F(1, 2)}


def test_solve_inconsistent_returns_none():
    m = RationalMatrix.from_rows([[1, 1], [1, 1]])
    assert m.solve([0, 1]) is None


def test_quotient_basis_dimension():
    z = [{0: F(1)}, {1: F(1)}, {2: F(1)}]
    b = [{0: F(1), 1: F(2)}]
    q = linalg.quotient_basis(z, b)
    assert len(q) == 2


def test_quotient_basis_rejects_non_subspace():
    z = [{0: F(1)}]
    b = [{1: F(1)}]
    with pytest.raises(PreconditionError):
        linalg.quotient_basis(z, b)


def test_intersect():
    a = [{0: F(1)}, {1: F(1)}]
    b = [{1: F(1)}, {2: F(1)}]
    got = linalg.intersect(a, b)
    assert got == [{1: F(1)}]


small_entries = st.integers(min_value=-6, max_value=6)


@st.composite
def matrices(draw):
    nrows = draw(st.integers(min_value=1, max_value=5))
    ncols = draw(st.integers(min_value=1, max_value=5))
    rows = [
        [draw(small_entries) for _ in range(ncols)] for _ in range(nrows)
    ]
    return RationalMatrix.from_rows([r + [0] * (ncols - len(r)) for r in rows])


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_vectors_annihilate(m):
    for k in m.kernel_basis():
        assert m.apply(k) == {}


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    assert m.rank() + len(m.kernel_basis()) == m.cols


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(small_entries, min_size=1, max_size=5))
def test_solve_is_exact_when_solvable(m, coeffs):
    # build a solvable right-hand side from a known combination
    x = {j: F(c) for j, c in enumerate(coeffs[: m.cols]) if c}
    b = m.apply(x)
    sol = m.solve(b)
    assert sol is not None
    assert m.apply(sol) == b


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_rref_rows_span_input(m):
    rows = []
    for i in range(m.rows):
        rows.append({j: v for (ii, j), v in m.entries.items() if ii == i})
    rr = linalg.rref(rows, track=True)
    # each reduced row must be the stated combination of the input rows
    for row, combo in zip(rr.rows, rr.combos):
        rebuilt = {}
        for j, c in combo.items():
            rebuilt = linalg.vec_add(rebuilt, rows[j], c)
        assert rebuilt == row
    # every kernel combo really kills the rows
    for combo in rr.kernel:
        rebuilt = {}
        for j, c in combo.items():
            rebuilt = linalg.vec_add(rebuilt, rows[j], c)
        assert rebuilt == {}
