"""Global sections of twisted kernel bundles and the vanishing scans built on them.

``H^0`` of a sum of line bundles has a monomial basis; a polynomial matrix
between two such sums induces a scalar matrix between these bases.  Left
exactness of ``H^0`` on ``0 -> T -> B -g-> C -> 0`` then gives
``h^0(T(p)) = dim ker H^0(g(p))`` exactly.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cohomology import LineBundleSum, exterior_power_sum, sum_h
from .grading import InhomogeneousError, homogeneity_check
from .lattice import MultiDeg, Space, add, degree_of, normalize_twist, polarization, scale
from .linalg import rank
from .monad import Monad, display_invariants
from .polys import Monomial, PolyMatrix, mono_mul


def _factor_monomials(factor: int, n_vars: int, degree: int) -> list[Monomial]:
    """Monomials of one factor in lex-descending order (``x_j0`` heaviest)."""
    out = []

    def rec(i: int, left: int, acc: list) -> None:
        if i == n_vars - 1:
            out.append(tuple(acc + ([((factor, i), left)] if left else [])))
            return
        for e in range(left, -1, -1):
            rec(i + 1, left - e, acc + ([((factor, i), e)] if e else []))

    rec(0, degree, [])
    return out


def section_basis(space: Space, p: Sequence[int]) -> list[Monomial]:
    """Monomial basis of ``H^0(O(p))``; empty if some ``p_j < 0``."""
    p = space.check(p)
    if any(x < 0 for x in p):
        return []
    basis: list[Monomial] = [()]
    for j, (d, pj) in enumerate(zip(space.factor_dims, p), start=1):
        part = _factor_monomials(j, d + 1, pj)
        basis = [a + b for a in basis for b in part]
    return basis


def section_dim(space: Space, p: Sequence[int]) -> int:
    if any(x < 0 for x in p):
        return 0
    return math.prod(math.comb(d + x, d) for d, x in zip(space.factor_dims, p))


def induced_section_map(M: PolyMatrix, source: LineBundleSum, target: LineBundleSum,
                        space: Space, p: Sequence[int] | None = None) -> list[list[Fraction]]:
    """Scalar matrix of ``H^0(M(p)): H^0(source(p)) -> H^0(target(p))``.

    Rows follow the target summands, columns the source summands, each block
    in :func:`section_basis` order.
    """
    p = space.check(p) if p is not None else space.zero()
    rep = homogeneity_check(M, source, target, space)
    if not rep.ok:
        raise InhomogeneousError(f"map is not homogeneous: {rep.failures[0]}")
    src_bases = [section_basis(space, add(d, p)) for d in source.expanded()]
    tgt_bases = [section_basis(space, add(d, p)) for d in target.expanded()]
    col_off = _offsets(src_bases)
    row_off = _offsets(tgt_bases)
    n_rows, n_cols = row_off[-1], col_off[-1]
    out = [[Fraction(0)] * n_cols for _ in range(n_rows)]
    tgt_index = [{m: i for i, m in enumerate(b)} for b in tgt_bases]
    for r, c, entry in M.nonzero_cells():
        if not src_bases[c]:
            continue
        index = tgt_index[r]
        for k, u in enumerate(src_bases[c]):
            col = col_off[c] + k
            for mono, coef in entry.terms.items():
                out[row_off[r] + index[mono_mul(mono, u)]][col] += coef
    return out


def _offsets(bases) -> list[int]:
    off = [0]
    for b in bases:
        off.append(off[-1] + len(b))
    return off


def _require_homogeneous(M: Monad) -> None:
    if not M.is_homogeneous():
        raise InhomogeneousError("monad terms do not grade its maps; run grading inference first")


def h0_twisted_kernel(M: Monad, p: Sequence[int]) -> int:
    """``h^0(T(p))`` for ``T = ker g``."""
    _require_homogeneous(M)
    mat = induced_section_map(M.g, M.B, M.C, M.space, p)
    n_cols = sum(section_dim(M.space, add(d, p)) for d in M.B.expanded())
    if not n_cols:
        return 0
    return n_cols - (rank(mat, M.field.p) if mat else 0)


# -- Hoppe scans -------------------------------------------------------------

@dataclass(frozen=True)
class ScanCell:
    q: int
    p: MultiDeg  # twist of the normalized wedge power
    twist: MultiDeg  # total twist applied to wedge^q T
    delta: int  # delta_L(p)
    status: str  # "verified-zero" | "nonzero" | "inconclusive-surrogate"
    dimension: int  # exact h0 for q = 1, surrogate bound for q >= 2


@dataclass(frozen=True)
class PowerData:
    q: int
    rank: int
    c1: MultiDeg
    slope: Fraction
    k_norm: int  # normalized bundle is wedge^q T (-k_norm, 0, ..., 0)


@dataclass(frozen=True)
class ScanReport:
    box: int
    L: MultiDeg
    rank_T: int
    mu_T: Fraction
    powers: tuple[PowerData, ...]
    cells: tuple[ScanCell, ...]

    def by_q(self, q: int) -> list[ScanCell]:
        return [c for c in self.cells if c.q == q]

    @property
    def all_verified(self) -> bool:
        return all(c.status == "verified-zero" for c in self.cells)

    @property
    def nonzero(self) -> list[ScanCell]:
        return [c for c in self.cells if c.status == "nonzero"]

    @property
    def inconclusive(self) -> list[ScanCell]:
        return [c for c in self.cells if c.status == "inconclusive-surrogate"]


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("MONADFORGE_THREADS", "1")))
    except ValueError:
        return 1


def hoppe_scan(M: Monad, L: Sequence[int] | None = None, box: int = 4, max_q: int = 2,
               workers: int | None = None) -> ScanReport:
    """Vanishing scan for ``H^0((wedge^q T)_norm(p))`` over ``|p_j| <= box``, ``delta_L(p) <= 0``.

    ``q = 1`` is exact.  For ``q >= 2`` the section space is bounded through
    ``wedge^q T -> wedge^q B``: a zero bound is verified, anything else is
    inconclusive.  Normalization is recomputed for every ``q``.
    """
    _require_homogeneous(M)
    if box < 1:
        raise ValueError("box must be at least 1")
    space = M.space
    L = polarization(space, L)
    T = display_invariants(M, L).T
    r = T.rank
    powers = []
    for q in range(1, min(max_q, r - 1) + 1):
        rq = math.comb(r, q)
        c1q = scale(math.comb(r - 1, q - 1), T.c1)
        k = normalize_twist(space, c1q, rq, L)
        powers.append(PowerData(q, rq, c1q, Fraction(degree_of(space, c1q, L), rq), k))

    delta_basis = [degree_of(space, space.basis(j), L) for j in range(space.m)]
    twists = [p for p in _cube(space.m, box) if sum(a * b for a, b in zip(p, delta_basis)) <= 0]
    jobs = [(pw, p) for pw in powers for p in twists]
    wedge_cache = {pw.q: exterior_power_sum(M.B, pw.q) for pw in powers if pw.q >= 2}

    def run(job) -> ScanCell:
        pw, p = job
        total = add(p, scale(-pw.k_norm, space.basis(0)))
        delta = sum(a * b for a, b in zip(p, delta_basis))
        if pw.q == 1:
            h = h0_twisted_kernel(M, total)
            return ScanCell(1, p, total, delta, "verified-zero" if h == 0 else "nonzero", h)
        bound = sum_h(space, wedge_cache[pw.q].twist(total))[0]
        return ScanCell(pw.q, p, total, delta,
                        "verified-zero" if bound == 0 else "inconclusive-surrogate", bound)

    n = workers if workers is not None else _workers()
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            cells = list(pool.map(run, jobs))
    else:
        cells = [run(j) for j in jobs]
    return ScanReport(box, L, r, T.slope, tuple(powers), tuple(cells))


def _cube(m: int, box: int):
    if m == 0:
        yield ()
        return
    for head in range(-box, box + 1):
        for tail in _cube(m - 1, box):
            yield (head,) + tail


# -- simplicity ingredients ------------------------------------------------------

@dataclass(frozen=True)
class DualKernelCohomology:
    """``h^0`` and ``h^1`` of ``T*(p)`` read off ``0 -> C*(p) -> B*(p) -> T*(p) -> 0``."""

    p: MultiDeg
    h0_range: tuple[int, int]
    h1: int | None  # None: not determined by the flanking terms
    h1_upper: int

    @property
    def h0(self) -> int | None:
        lo, hi = self.h0_range
        return lo if lo == hi else None


def dual_kernel_h0_h1(M: Monad, p: Sequence[int]) -> DualKernelCohomology:
    _require_homogeneous(M)
    space = M.space
    p = space.check(p)
    Bd = M.B.dual().twist(p)
    Cd = M.C.dual().twist(p)
    hB, hC = sum_h(space, Bd), sum_h(space, Cd)
    mat = induced_section_map(M.g.T, M.C.dual(), M.B.dual(), space, p)
    rk = rank(mat, M.field.p) if mat and mat[0] else 0
    lo = hB[0] - rk
    h0_range = (lo, lo + hC[1])  # connecting map into H^1(C*(p)) is not computed
    h1 = 0 if hB[1] == 0 and hC[2] == 0 else None
    return DualKernelCohomology(p, h0_range, h1, hB[1] + hC[2])


@dataclass(frozen=True)
class Link:
    name: str
    status: str  # "verified" | "failed" | "evidence-only" | "out-of-scope"
    detail: str


@dataclass(frozen=True)
class SimplicityReport:
    links: tuple[Link, ...]
    dual: DualKernelCohomology
    multiplicity: int

    def link(self, name: str) -> Link:
        return next(l for l in self.links if l.name == name)


def simplicity_ingredients(M: Monad, scan: ScanReport | None = None) -> SimplicityReport:
    """Computable links of the chain ``1 <= h0(E x E*) <= h0(E x T*) = h0(T x T*) = 1``."""
    space = M.space
    p = (-1,) * space.m
    d = dual_kernel_h0_h1(M, p)
    k = M.A.rank
    twist = ",".join(str(x) for x in p)
    if d.h0 == 0 and d.h1 == 0:
        s = Link("dual-kernel-vanishing", "verified",
                 f"h0(T*({twist})) = h1(T*({twist})) = 0; times k={k}: 0 and 0")
    else:
        h0 = "undetermined" if d.h0 is None else d.h0 * k
        h1 = "undetermined" if d.h1 is None else d.h1 * k
        s = Link("dual-kernel-vanishing", "failed",
                 f"h0(T*({twist})) in {list(d.h0_range)}, h1 = {d.h1}; times k={k}: h0={h0}, h1={h1}")
    if scan is None:
        ev = Link("T-simple-from-stability", "evidence-only", "no scan supplied")
    else:
        q1 = scan.by_q(1)
        ok = sum(c.status == "verified-zero" for c in q1)
        ev = Link("T-simple-from-stability", "evidence-only",
                  f"stable implies simple; scan box={scan.box}: {ok}/{len(q1)} q=1 cells verified-zero, "
                  f"{len(scan.inconclusive)} inconclusive, {len(scan.nonzero)} nonzero")
    out = Link("h0(E x E*)", "out-of-scope", "needs cohomology of a non-split bundle")
    return SimplicityReport((s, ev, out), d, k)
