import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monadforge.constructions import (PairedSpaceParams, band_f, band_g, build_homogenized_monad,
                                      build_monad)
from monadforge.monad import display_invariants, validate
from monadforge.polys import MultiPoly, PolyMatrix


def grid(str_rows):
    return PolyMatrix.parse(str_rows)


def test_band_f_examples():
    assert band_f(1, 1, 2) == grid([["x2_1", "x2_0"]])
    assert band_f(1, 2, 2) == grid([["x2_1", "x2_0", "0"], ["0", "x2_1", "x2_0"]])
    assert band_f(2, 1, 1) == grid([["x1_2", "x1_1", "x1_0"]])


def test_band_g_examples():
    assert band_g(1, 1, 1) == grid([["x1_0"], ["x1_1"]])
    assert band_g(1, 2, 1) == grid([["x1_0", "0"], ["x1_1", "x1_0"], ["0", "x1_1"]])


def test_band_exponent():
    assert band_f(1, 1, 2, alpha=2) == grid([["x2_1^2", "x2_0^2"]])


def _swap(M: PolyMatrix, x: int, y: int) -> PolyMatrix:
    def sw(p: MultiPoly) -> MultiPoly:
        out = {}
        for mono, c in p.terms.items():
            new = tuple(sorted((((y if j == x else x if j == y else j), i), e) for (j, i), e in mono))
            out[new] = c
        return MultiPoly(out)
    return PolyMatrix([[sw(M[r, c]) for c in range(M.cols)] for r in range(M.rows)])


@pytest.mark.parametrize("a,k", [(1, 1), (1, 3), (2, 2), (3, 4)])
def test_paired_band_product_symmetric(a, k):
    prod = band_f(a, k, 2) @ band_g(a, k, 1)
    assert _swap(prod, 1, 2) == band_f(a, k, 1) @ band_g(a, k, 2)
    assert _swap(prod, 1, 2) == prod


def test_build_smallest():
    M = build_monad(PairedSpaceParams((1,), 1))
    assert M.f == grid([["x2_1"], ["x2_0"], ["-x1_1"], ["-x1_0"]])
    assert M.g == grid([["x1_0", "x1_1", "x2_0", "x2_1"]])
    assert (M.g @ M.f).is_zero()


def test_build_two_pairs():
    M = build_monad(PairedSpaceParams((1, 1), 1))
    assert M.B.rank == 8
    assert (M.g @ M.f).is_zero()
    inv = display_invariants(M)
    assert inv.E.rank == 6


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(1, 4))
def test_build_shapes_and_composition(a, k):
    M = build_monad(PairedSpaceParams(tuple(a), k))
    total = sum(2 * (ai + k) for ai in a)
    assert M.f.shape == (total, k) and M.g.shape == (k, total)
    assert M.space.factor_dims == tuple(d for ai in a for d in (ai, ai))
    assert (M.g @ M.f).is_zero()


def test_homogenized_examples():
    M = build_homogenized_monad(PairedSpaceParams((1,), 1))
    assert validate(M).status == "pass"
    inv = display_invariants(M)
    assert inv.E.rank == 2 and inv.E.c1 == (-1, -1)
    assert str(M.A) == "O(-1,-1)"
    assert str(M.B) == "O(-1,0)^2 + O(0,-1)^2"
    assert str(M.C) == "O(0,0)"

    M = build_homogenized_monad(PairedSpaceParams((2,), 1))
    assert display_invariants(M).E.rank == 4

    M = build_homogenized_monad(PairedSpaceParams((1,), 2))
    assert M.B.rank == 6 and list(M.C) == [((0, 0), 2)]
    assert M.is_homogeneous()


def test_homogenized_rejects_two_pairs():
    with pytest.raises(ValueError):
        build_homogenized_monad(PairedSpaceParams((1, 1), 1))


@pytest.mark.parametrize("bad", [dict(a=(), k=1), dict(a=(0,), k=1), dict(a=(1,), k=0),
                                 dict(a=(1, 2), k=1, alpha=(1,))])
def test_params_validation(bad):
    with pytest.raises(ValueError):
        PairedSpaceParams(**bad)


def test_alpha_two_is_reported_not_rejected():
    M = build_monad(PairedSpaceParams((1,), 1, (2,)))
    assert (M.g @ M.f).is_zero()
    assert M.metadata["builder"]["alpha"] == [2]
    rep = validate(M, trials=3)
    assert "homogeneity_f" in rep.failed
