"""Cohomology of line bundles and split bundles on products of projective spaces."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .lattice import MultiDeg, Space, add, scale


def ext_binomial(x: int, k: int) -> int:
    """``x (x-1) ... (x-k+1) / k!`` for any integer ``x`` and ``k >= 0``."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= x - i
    return num // math.factorial(k)


def euler_factor(n: int, d: int) -> int:
    """Hilbert polynomial of ``P^n``: ``C(n+d, n)`` read as a polynomial in ``d``."""
    return ext_binomial(n + d, n)


class LineBundleSum:
    """Ordered direct sum of line bundles ``O(deg)^{mult}``.

    Order matters: it fixes the basis in which maps between sums are written,
    so only *adjacent* equal summands are merged.  Use :meth:`merged` for a
    fully collected copy when order is irrelevant.
    """

    __slots__ = ("summands",)

    def __init__(self, summands: Iterable[tuple[Sequence[int], int]] = ()):
        out: list[tuple[MultiDeg, int]] = []
        for deg, mult in summands:
            deg = tuple(int(x) for x in deg)
            mult = int(mult)
            if mult < 1:
                raise ValueError(f"multiplicity must be positive, got {mult}")
            if out and len(out[0][0]) != len(deg):
                raise ValueError("summands must share one lattice")
            if out and out[-1][0] == deg:
                out[-1] = (deg, out[-1][1] + mult)
            else:
                out.append((deg, mult))
        self.summands: tuple[tuple[MultiDeg, int], ...] = tuple(out)

    @classmethod
    def single(cls, deg: Sequence[int], mult: int = 1) -> "LineBundleSum":
        return cls([(deg, mult)])

    @property
    def rank(self) -> int:
        return sum(m for _, m in self.summands)

    @property
    def c1(self) -> MultiDeg | None:
        if not self.summands:
            return None
        total = (0,) * len(self.summands[0][0])
        for deg, mult in self.summands:
            total = add(total, scale(mult, deg))
        return total

    def c1_in(self, space: Space) -> MultiDeg:
        return self.c1 if self.summands else space.zero()

    def expanded(self) -> list[MultiDeg]:
        """One twist per basis vector, in order."""
        return [deg for deg, mult in self.summands for _ in range(mult)]

    def twist(self, p: Sequence[int]) -> "LineBundleSum":
        return LineBundleSum((add(deg, p), mult) for deg, mult in self.summands)

    def dual(self) -> "LineBundleSum":
        return LineBundleSum((scale(-1, deg), mult) for deg, mult in self.summands)

    def merged(self) -> "LineBundleSum":
        counts: dict[MultiDeg, int] = {}
        for deg, mult in self.summands:
            counts[deg] = counts.get(deg, 0) + mult
        return LineBundleSum(counts.items())

    def __add__(self, other: "LineBundleSum") -> "LineBundleSum":
        return LineBundleSum(self.summands + other.summands)

    def __iter__(self) -> Iterator[tuple[MultiDeg, int]]:
        return iter(self.summands)

    def __len__(self):
        return len(self.summands)

    def __eq__(self, other):
        return isinstance(other, LineBundleSum) and self.summands == other.summands

    def __hash__(self):
        return hash(self.summands)

    def __repr__(self):
        return f"LineBundleSum({list(self.summands)!r})"

    def __str__(self):
        if not self.summands:
            return "0"
        parts = []
        for deg, mult in self.summands:
            s = "O(" + ",".join(str(x) for x in deg) + ")"
            parts.append(s if mult == 1 else f"{s}^{mult}")
        return " + ".join(parts)


@dataclass(frozen=True)
class CohomTable:
    """Dimensions ``h^0, ..., h^dim``."""

    values: tuple[int, ...]

    def __getitem__(self, t: int) -> int:
        if 0 <= t < len(self.values):
            return self.values[t]
        return 0

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __add__(self, other: "CohomTable") -> "CohomTable":
        n = max(len(self.values), len(other.values))
        return CohomTable(tuple(self[t] + other[t] for t in range(n)))

    def scaled(self, c: int) -> "CohomTable":
        return CohomTable(tuple(c * v for v in self.values))

    def nonzero(self) -> dict[int, int]:
        return {t: h for t, h in enumerate(self.values) if h}

    def is_zero(self) -> bool:
        return not any(self.values)

    def euler_characteristic(self) -> int:
        return sum((-1) ** t * h for t, h in enumerate(self.values))

    @classmethod
    def zeros(cls, space: Space) -> "CohomTable":
        return cls((0,) * (space.dim + 1))


def bott_h(n: int, d: int, q: int) -> int:
    """``h^q(P^n, O(d))``."""
    if not 0 <= q <= n:
        raise ValueError(f"q must lie in 0..{n}, got {q}")
    if q == 0:
        return math.comb(n + d, n) if d >= 0 else 0
    if q == n:
        return math.comb(-d - 1, n) if -d - n - 1 >= 0 else 0
    return 0


def kunneth_h(space: Space, p: Sequence[int]) -> CohomTable:
    """All ``h^t(X, O(p))``, summing over which factors carry top cohomology."""
    p = space.check(p)
    dims = space.factor_dims
    # per factor only q = 0 or q = d_j can be nonzero
    options = [((0, bott_h(d, pj, 0)), (d, bott_h(d, pj, d))) for d, pj in zip(dims, p)]
    h = [0] * (space.dim + 1)
    for choice in itertools.product(*options):
        prod = 1
        for _, v in choice:
            prod *= v
            if not prod:
                break
        if prod:
            h[sum(q for q, _ in choice)] += prod
    return CohomTable(tuple(h))


def sum_h(space: Space, bundles: LineBundleSum) -> CohomTable:
    total = CohomTable.zeros(space)
    for deg, mult in bundles:
        total = total + kunneth_h(space, deg).scaled(mult)
    return total


def exterior_power_sum(bundles: LineBundleSum, q: int) -> LineBundleSum:
    """``wedge^q`` of a sum of line bundles, collected by multidegree.

    Choosing ``j_i`` copies of the ``i``-th distinct summand (multiplicity
    ``m_i``) contributes ``O(sum j_i deg_i)`` with multiplicity ``prod C(m_i, j_i)``.
    """
    S = bundles.merged()
    if not 0 <= q <= S.rank:
        raise ValueError(f"q must lie in 0..{S.rank}, got {q}")
    summands = list(S)
    if not summands:
        return LineBundleSum()
    zero = (0,) * len(summands[0][0])
    out: dict[MultiDeg, int] = {}

    def rec(i: int, left: int, deg: MultiDeg, mult: int) -> None:
        if i == len(summands):
            if left == 0:
                out[deg] = out.get(deg, 0) + mult
            return
        d_i, m_i = summands[i]
        for j in range(min(m_i, left), -1, -1):
            rec(i + 1, left - j, add(deg, scale(j, d_i)), mult * math.comb(m_i, j))

    rec(0, q, zero, 1)
    return LineBundleSum(out.items())


@dataclass(frozen=True)
class VanishingCheck:
    """Engine values against the claim ``h^t(O(-p)) = 0`` for ``0 <= t < dim - 1``."""

    p: MultiDeg
    table: CohomTable
    checked: tuple[int, ...]
    discrepancies: dict

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def vanishing_region_check(space: Space, p: Sequence[int]) -> VanishingCheck:
    p = space.check(p)
    if sum(p) <= 0:
        raise ValueError(f"the vanishing claim needs sum(p) > 0, got {p}")
    table = kunneth_h(space, scale(-1, p))
    checked = tuple(range(0, max(space.dim - 1, 0)))
    bad = {t: table[t] for t in checked if table[t]}
    return VanishingCheck(p, table, checked, bad)
