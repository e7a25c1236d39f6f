from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dglcalc import FreeLieAlgebra, TruncationError, coordinates
from dglcalc.errors import PreconditionError

from . import oracles

F = Fraction


@pytest.fixture
def one_odd():
    return FreeLieAlgebra([("x", 1)], truncation=8)


@pytest.fixture
def one_even():
    return FreeLieAlgebra([("a", 2)], truncation=8)


@pytest.fixture
def two_odd():
    return FreeLieAlgebra([("x", 1), ("y", 1)], truncation=6)


def test_odd_square_survives(one_odd):
    x = one_odd.gen("x")
    sq = x.bracket(x)
    assert not sq.is_zero()
    assert sq.tensor_expansion() == {(0, 0): F(2)}


def test_even_square_dies(one_even):
    a = one_even.gen("a")
    assert a.bracket(a).is_zero()


def test_odd_cube_dies(one_odd):
    # oracle: x(2xx) - (-1)^{1*2}(2xx)x = 2xxx - 2xxx = 0
    x = one_odd.gen("x")
    assert x.bracket(x.bracket(x)).is_zero()
    assert oracles.combo_expand({("x", ("x", "x")): 1}, {"x": 1}) == {}


def test_degree_basis_one_odd_generator(one_odd):
    assert one_odd.degree_basis(2).dimension == 1
    assert one_odd.degree_basis(2).monomials == (("x", "x"),)
    assert oracles.lie_dim({"x": 1}, 2) == 1


def test_degree_basis_one_even_generator(one_even):
    assert one_even.degree_basis(4).dimension == 0
    assert oracles.lie_dim({"a": 2}, 4) == 0


def test_degree_basis_two_odd_generators(two_odd):
    basis = two_odd.degree_basis(2)
    assert basis.dimension == 3
    assert basis.monomials == (("x", "x"), ("x", "y"), ("y", "y"))
    assert oracles.lie_dim({"x": 1, "y": 1}, 2) == 3


def test_coordinates_of_zero(two_odd):
    z = two_odd.zero(2)
    assert coordinates(z, two_odd.degree_basis(2)) == [F(0)] * 3


def test_coordinates_of_basis_monomial(one_odd):
    x = one_odd.gen("x")
    basis = one_odd.degree_basis(2)
    assert coordinates(x.bracket(x), basis) == [F(1)]


def test_coordinates_resolve_reordered_brackets(two_odd):
    # For odd x, y the oracle gives [y,x] = [x,y] in the tensor algebra, so
    # 3[x,y] - 2[y,x] reduces to a single unit of the basis monomial [x,y].
    x, y = two_odd.gen("x"), two_odd.gen("y")
    e = 3 * x.bracket(y) - 2 * y.bracket(x)
    basis = two_odd.degree_basis(2)
    expected = oracles.combo_expand(
        {("x", "y"): 3, ("y", "x"): -2}, {"x": 1, "y": 1}
    )
    got = {two_odd.word_names(w): c for w, c in e.tensor_expansion().items()}
    assert got == expected
    xy_index = basis.monomials.index(("x", "y"))
    coords = coordinates(e, basis)
    assert coords[xy_index] == F(1)
    assert all(c == 0 for i, c in enumerate(coords) if i != xy_index)


def test_bracket_beyond_truncation_raises():
    alg = FreeLieAlgebra([("x", 3)], truncation=5)
    x = alg.gen("x")
    with pytest.raises(TruncationError):
        x.bracket(x)


def test_duplicate_names_rejected():
    with pytest.raises(PreconditionError):
        FreeLieAlgebra([("x", 1), ("x", 2)], truncation=5)


def test_generator_degree_must_be_positive():
    with pytest.raises(PreconditionError):
        FreeLieAlgebra([("x", 0)], truncation=5)


# -- randomized properties ----------------------------------------------------


gen_sets = st.sampled_from(
    [
        (("x", 1),),
        (("x", 1), ("y", 1)),
        (("x", 1), ("y", 2)),
        (("a", 2), ("b", 3)),
        (("x", 1), ("a", 2), ("u", 3)),
        (("a", 2), ("b", 2)),
    ]
)


@st.composite
def algebra_and_elements(draw, count=2, max_degree=4):
    gens = draw(gen_sets)
    alg = FreeLieAlgebra(gens, truncation=8)
    elements = []
    for _ in range(count):
        n = draw(st.integers(min_value=1, max_value=max_degree))
        basis = alg.degree_basis(n)
        coords = [draw(st.integers(min_value=-3, max_value=3)) for _ in basis.words]
        elements.append(alg.element_from_coords(n, coords))
    return alg, elements


@settings(max_examples=60, deadline=None)
@given(algebra_and_elements(count=2))
def test_graded_antisymmetry(data):
    alg, (a, b) = data
    sign = (-1) ** (a.degree * b.degree)
    assert (a.bracket(b) + sign * b.bracket(a)).is_zero()


@settings(max_examples=40, deadline=None)
@given(algebra_and_elements(count=3, max_degree=2))
def test_graded_jacobi(data):
    alg, (a, b, c) = data
    sign = (-1) ** (a.degree * b.degree)
    lhs = a.bracket(b.bracket(c))
    rhs = a.bracket(b).bracket(c) + sign * b.bracket(a.bracket(c))
    assert lhs == rhs


@settings(max_examples=25, deadline=None)
@given(gen_sets, st.integers(min_value=1, max_value=5))
def test_dimension_matches_tensor_rank_oracle(gens, n):
    alg = FreeLieAlgebra(gens, truncation=8)
    degrees = {name: d for name, d in gens}
    assert alg.degree_basis(n).dimension == oracles.lie_dim(degrees, n)


@settings(max_examples=40, deadline=None)
@given(algebra_and_elements(count=2, max_degree=3), st.integers(-4, 4), st.integers(-4, 4))
def test_coordinates_are_linear(data, s, t):
    alg, (a, b) = data
    if a.degree != b.degree:
        b = alg.zero(a.degree)
    basis = alg.degree_basis(a.degree)
    ca = coordinates(a, basis)
    cb = coordinates(b, basis)
    combo = coordinates(s * a + t * b, basis)
    assert combo == [s * x + t * y for x, y in zip(ca, cb)]
