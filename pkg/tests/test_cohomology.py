import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monadforge.cohomology import (CohomTable, LineBundleSum, bott_h, euler_factor, ext_binomial,
                                   exterior_power_sum, kunneth_h, sum_h, vanishing_region_check)
from monadforge.lattice import Space

from conftest import h0_oracle, monomial_count, wedge_oracle

P1P1 = Space((1, 1))


def test_bott_examples():
    assert bott_h(2, 2, 0) == 6
    assert [bott_h(2, -1, q) for q in range(3)] == [0, 0, 0]
    assert bott_h(3, -5, 3) == 4
    with pytest.raises(ValueError):
        bott_h(2, 0, 3)


def test_bott_sections_match_monomial_count():
    for n in range(1, 5):
        for d in range(-3, 6):
            assert bott_h(n, d, 0) == monomial_count(n + 1, d)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.integers(-12, 12), st.data())
def test_serre_duality_bott(n, d, data):
    q = data.draw(st.integers(0, n))
    assert bott_h(n, d, q) == bott_h(n, -d - n - 1, n - q)


def test_kunneth_examples():
    assert kunneth_h(P1P1, (-2, 0)).nonzero() == {1: 1}
    assert kunneth_h(P1P1, (1, 1)).nonzero() == {0: 4}
    assert kunneth_h(P1P1, (-2, -2)).nonzero() == {2: 1}
    assert kunneth_h(P1P1, (-2, 0))[7] == 0


def test_sum_examples():
    G = LineBundleSum([((-1, 0), 2), ((0, -1), 2)])
    assert sum_h(P1P1, G).is_zero()
    assert sum_h(Space((2, 3)), LineBundleSum([((0, 0), 5)])).nonzero() == {0: 5}
    S = LineBundleSum([((1, 1), 1), ((-2, -2), 1)])
    assert sum_h(P1P1, S).nonzero() == {0: 4, 2: 1}


def test_line_bundle_sum_shape():
    S = LineBundleSum([((-1, 0), 1), ((-1, 0), 1), ((0, -1), 2), ((-1, 0), 1)])
    assert list(S) == [((-1, 0), 2), ((0, -1), 2), ((-1, 0), 1)]  # order kept, neighbours merged
    assert list(S.merged()) == [((-1, 0), 3), ((0, -1), 2)]
    assert S.rank == 5 and S.c1 == (-3, -2)
    assert str(LineBundleSum([((-1, 0), 2), ((0, -1), 2)])) == "O(-1,0)^2 + O(0,-1)^2"
    with pytest.raises(ValueError):
        LineBundleSum([((0, 0), 0)])


def test_exterior_examples():
    assert list(exterior_power_sum(LineBundleSum([((1, 0), 1), ((0, 2), 1)]), 2)) == [((1, 2), 1)]
    G = LineBundleSum([((-1, 0), 2), ((0, -1), 2)])
    w = exterior_power_sum(G, 2)
    assert dict(w) == {(-2, 0): 1, (-1, -1): 4, (0, -2): 1}
    assert w.rank == 6
    assert exterior_power_sum(G, 1).merged() == G.merged()


summand_lists = st.lists(
    st.tuples(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(1, 3)),
    min_size=1, max_size=4)


@settings(max_examples=80, deadline=None)
@given(summand_lists, st.data())
def test_exterior_matches_subset_enumeration(summands, data):
    S = LineBundleSum(summands)
    q = data.draw(st.integers(1, S.rank))
    w = exterior_power_sum(S, q)
    assert dict(w) == dict(wedge_oracle(summands, q))
    assert w.rank == math.comb(S.rank, q)
    # c1 of wedge^q is C(r-1, q-1) c1 for any split bundle
    assert w.c1 == tuple(math.comb(S.rank - 1, q - 1) * x for x in S.c1)


def test_ext_binomial():
    assert ext_binomial(-3, 2) == 6
    assert ext_binomial(5, 2) == 10
    assert ext_binomial(1, 3) == 0
    assert euler_factor(1, -2) == -1


BOXES = {(1, 1): 4, (2, 1): 4}


@pytest.mark.parametrize("dims", list(BOXES))
def test_engine_box_three_oracles(dims):
    space = Space(dims)
    box = BOXES[dims]
    for p in itertools.product(range(-box, box + 1), repeat=len(dims)):
        h = kunneth_h(space, p)
        # Serre duality on the whole product
        dual = kunneth_h(space, tuple(-x - d - 1 for x, d in zip(p, dims)))
        assert all(h[t] == dual[space.dim - t] for t in range(space.dim + 1))
        assert h.euler_characteristic() == math.prod(euler_factor(d, x) for d, x in zip(dims, p))
        assert h[0] == h0_oracle(dims, p)
        assert all(v >= 0 for v in h)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 3), st.integers(-5, 5)), min_size=1, max_size=4), st.randoms())
def test_kunneth_permutation_equivariant(pairs, rnd):
    perm = pairs[:]
    rnd.shuffle(perm)
    a = kunneth_h(Space(tuple(d for d, _ in pairs)), tuple(x for _, x in pairs))
    b = kunneth_h(Space(tuple(d for d, _ in perm)), tuple(x for _, x in perm))
    assert a == b


def test_vanishing_examples():
    assert vanishing_region_check(P1P1, (1, 0)).ok
    chk = vanishing_region_check(Space((1, 1, 1, 1)), (1, 1, 1, 1))
    assert chk.ok and chk.checked == (0, 1, 2)
    chk = vanishing_region_check(P1P1, (2, 0))
    assert chk.ok and chk.checked == (0,) and chk.table[1] == 1
    with pytest.raises(ValueError):
        vanishing_region_check(P1P1, (1, -1))


def test_vanishing_counterexample_is_reported():
    chk = vanishing_region_check(Space((2, 1)), (0, 2))
    assert not chk.ok and chk.discrepancies == {1: 1}


def test_cohom_table_algebra():
    a = CohomTable((1, 0, 2))
    assert (a + a).nonzero() == {0: 2, 2: 4}
    assert a.euler_characteristic() == 3
    assert CohomTable.zeros(P1P1).is_zero()
