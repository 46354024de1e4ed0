import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monadforge.lattice import (Space, basis_degree_all_ones, degree_of, intersection_number,
                                normalize_twist, polarization, slope)

from conftest import chow_oracle, degree_oracle

P1P1 = Space((1, 1))
P2P1 = Space((2, 1))


def test_intersection_examples():
    assert intersection_number(P1P1, [(1, 0), (0, 1)]) == 1
    assert intersection_number(P1P1, [(1, 0), (1, 0)]) == 0
    assert intersection_number(P2P1, [(1, 1)] * 3) == 3
    assert chow_oracle((2, 1), [(1, 1)] * 3) == 3


def test_intersection_errors():
    with pytest.raises(ValueError):
        intersection_number(P1P1, [(1, 0)])
    with pytest.raises(ValueError):
        intersection_number(P1P1, [(1, 0, 0), (0, 1, 0)])
    with pytest.raises(ValueError):
        Space(())
    with pytest.raises(ValueError):
        Space((1, 0))


def test_degree_examples():
    assert degree_of(P1P1, (1, 1), (1, 1)) == 2
    assert degree_of(P1P1, (0, 0), (3, 5)) == 0
    assert degree_of(P1P1, (-3, -3)) == -6 == degree_oracle((1, 1), (-3, -3))


def test_slope_examples():
    assert slope(P1P1, (-3, -3), 3) == -2
    assert slope(P2P1, (0, 0), 7) == 0
    assert slope(P1P1, (-2, -2), 3, (1, 1)) == Fraction(-4, 3)
    with pytest.raises(ValueError):
        slope(P1P1, (1, 1), 0)


def test_normalize_examples():
    # the bracket gives -1 here: deg(c1 - 3*(-1)*e1) = -4 + 3 = -1 lies in [-2, 0]
    assert normalize_twist(P1P1, (-2, -2), 3, (1, 1)) == -1
    assert normalize_twist(P1P1, (0, 0), 5) == 0
    k = normalize_twist(P2P1, (3, 0), 1, (1, 1))
    d = degree_of(P2P1, (1, 0))
    window = [j for j in range(-20, 21) if 1 - d <= degree_of(P2P1, (3 - j, 0)) <= 0]
    assert window == [k]


def test_polarization_validation():
    assert polarization(P2P1) == (1, 1)
    with pytest.raises(ValueError):
        polarization(P1P1, (1, 0))


@pytest.mark.parametrize("dims", [(1, 1), (2, 1), (1, 2, 1), (3, 2), (1, 1, 1, 1)])
def test_basis_degree_closed_form(dims):
    space = Space(dims)
    for j in range(space.m):
        e = space.basis(j)
        assert basis_degree_all_ones(space, j) == degree_of(space, e) == degree_oracle(dims, e)


@pytest.mark.parametrize("dims,classes", [
    ((1, 1), [(2, -1), (3, 4)]),
    ((2, 1), [(1, 2), (-1, 3), (2, 2)]),
    ((1, 1, 1), [(1, 0, 2), (0, 3, 1), (-2, 1, 1)]),
    ((2, 2), [(1, 1), (2, -1), (0, 3), (1, 5)]),
])
def test_intersection_matches_oracle(dims, classes):
    assert intersection_number(Space(dims), classes) == chow_oracle(dims, classes)


spaces = st.lists(st.integers(1, 3), min_size=1, max_size=3).map(tuple)


@st.composite
def space_and_classes(draw):
    dims = draw(spaces)
    n = sum(dims)
    classes = draw(st.lists(st.lists(st.integers(-4, 4), min_size=len(dims), max_size=len(dims)),
                            min_size=n, max_size=n))
    return Space(dims), [tuple(c) for c in classes]


@settings(max_examples=60, deadline=None)
@given(space_and_classes(), st.randoms())
def test_intersection_permutation_invariant(sc, rnd):
    space, classes = sc
    shuffled = classes[:]
    rnd.shuffle(shuffled)
    assert intersection_number(space, classes) == intersection_number(space, shuffled)


@st.composite
def space_two_degrees(draw):
    dims = draw(spaces)
    vec = st.lists(st.integers(-6, 6), min_size=len(dims), max_size=len(dims)).map(tuple)
    L = draw(st.lists(st.integers(1, 3), min_size=len(dims), max_size=len(dims)).map(tuple))
    return Space(dims), draw(vec), draw(vec), L


@settings(max_examples=80, deadline=None)
@given(space_two_degrees())
def test_degree_additive(data):
    space, p, q, L = data
    pq = tuple(a + b for a, b in zip(p, q))
    assert degree_of(space, pq, L) == degree_of(space, p, L) + degree_of(space, q, L)


@settings(max_examples=80, deadline=None)
@given(space_two_degrees(), st.integers(1, 9))
def test_normalize_bracket(data, rank):
    space, c1, _, L = data
    k = normalize_twist(space, c1, rank, L)
    d = degree_of(space, space.basis(0), L)
    shifted = (c1[0] - k * rank,) + c1[1:]
    assert 1 - d * rank <= degree_of(space, shifted, L) <= 0
    # uniqueness: neighbours fall outside the window
    for kk in (k - 1, k + 1):
        other = (c1[0] - kk * rank,) + c1[1:]
        assert not 1 - d * rank <= degree_of(space, other, L) <= 0


def test_grid_of_small_spaces_against_oracle():
    for dims in [(1, 1), (2, 1), (1, 1, 1)]:
        space = Space(dims)
        for c1 in itertools.product(range(-2, 3), repeat=len(dims)):
            assert degree_of(space, c1) == degree_oracle(dims, c1)
