"""Band matrices and the monad family on ``P^{a_1} x P^{a_1} x ... x P^{a_n} x P^{a_n}``.

Pair ``i`` occupies factors ``2i-1`` (the "x" copy) and ``2i`` (the "y"
copy).  Blocks are first written row-oriented (``f`` as ``k x sum``, ``g`` as
``sum x k``) and transposed into the column convention at the end, so the
complex condition reads ``g . f = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cohomology import LineBundleSum
from .grading import grading_inference
from .lattice import Space
from .monad import Monad
from .polys import QQ, FieldSpec, MultiPoly, PolyMatrix


@dataclass(frozen=True)
class PairedSpaceParams:
    a: tuple[int, ...]
    k: int
    alpha: tuple[int, ...] = field(default=())

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        alpha = tuple(int(x) for x in self.alpha) or (1,) * len(a)
        if not a or any(x < 1 for x in a):
            raise ValueError(f"pair dimensions must be positive, got {a}")
        if self.k < 1:
            raise ValueError(f"k must be positive, got {self.k}")
        if len(alpha) != len(a) or any(x < 1 for x in alpha):
            raise ValueError(f"need one positive exponent per pair, got {alpha}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "alpha", alpha)

    @property
    def n(self) -> int:
        return len(self.a)

    def space(self) -> Space:
        return Space(tuple(d for ai in self.a for d in (ai, ai)))


def band_f(a: int, k: int, factor: int, alpha: int = 1) -> PolyMatrix:
    """``k x (a+k)``: row ``r`` holds ``v_a^α, ..., v_0^α`` in columns ``r..r+a``."""
    rows = []
    for r in range(k):
        row = [MultiPoly()] * (a + k)
        for t in range(a + 1):
            row[r + t] = MultiPoly.var(factor, a - t, alpha)
        rows.append(row)
    return PolyMatrix(rows, cols=a + k)


def band_g(a: int, k: int, factor: int, alpha: int = 1) -> PolyMatrix:
    """``(a+k) x k``: column ``c`` holds ``v_0^α, ..., v_a^α`` in rows ``c..c+a``."""
    rows = [[MultiPoly()] * k for _ in range(a + k)]
    for c in range(k):
        for u in range(a + 1):
            rows[c + u][c] = MultiPoly.var(factor, u, alpha)
    return PolyMatrix(rows, cols=k)


def _band_blocks(params: PairedSpaceParams):
    f_blocks, g_blocks = [], []
    for i, (ai, al) in enumerate(zip(params.a, params.alpha)):
        x, y = 2 * i + 1, 2 * i + 2
        f_blocks += [band_f(ai, params.k, y, al), -band_f(ai, params.k, x, al)]
        g_blocks += [band_g(ai, params.k, x, al), band_g(ai, params.k, y, al)]
    return PolyMatrix.hstack(f_blocks), PolyMatrix.vstack(g_blocks)


def build_monad(params: PairedSpaceParams, field: FieldSpec = QQ) -> Monad:
    """The monad with the literal twists ``A = O(-1,..,-1)^k``, ``C = O(1,..,1)^k``.

    ``B`` is ``G_1 + ... + G_n`` with ``G_i = O(-e_{2i-1})^{a_i+k} + O(-e_{2i})^{a_i+k}``.
    These twists need not make the entries homogeneous; see
    :func:`build_homogenized_monad` and :func:`~monadforge.grading.grading_inference`.
    """
    space = params.space()
    m, k = space.m, params.k
    f_row, g_col = _band_blocks(params)
    B = []
    for i, ai in enumerate(params.a):
        for j in (2 * i, 2 * i + 1):
            B.append((tuple(-1 if s == j else 0 for s in range(m)), ai + k))
    return Monad(
        space=space,
        A=LineBundleSum.single((-1,) * m, k),
        B=LineBundleSum(B),
        C=LineBundleSum.single((1,) * m, k),
        f=f_row.T,
        g=g_col.T,
        field=field,
        metadata={"builder": _meta(params, homogenized=False)},
    )


def build_homogenized_monad(params: PairedSpaceParams, field: FieldSpec = QQ) -> Monad:
    """Same matrices as :func:`build_monad`, terms relabelled by grading inference.

    Only defined for a single pair; the anchor is ``A = O(-1, -1)``.
    """
    if params.n != 1:
        raise ValueError("homogenized builder needs exactly one pair")
    base = build_monad(params, field)
    res = grading_inference(base.f, base.g, base.space, anchor=(-1, -1))
    if not res.feasible:
        raise ValueError(f"no homogeneous grading: {res.witness}")
    A, B, C = res.terms()
    return Monad(base.space, A, B, C, base.f, base.g, field,
                 metadata={"builder": _meta(params, homogenized=True)})


def _meta(params: PairedSpaceParams, homogenized: bool) -> dict:
    return {"pairs": list(params.a), "k": params.k, "alpha": list(params.alpha),
            "homogenized": homogenized}
