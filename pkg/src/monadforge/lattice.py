"""Picard-lattice arithmetic on products of projective spaces.

The Chow ring of ``P^{d_1} x ... x P^{d_m}`` is ``Z[g_1, ..., g_m] / (g_j^{d_j+1})``
with ``g_1^{d_1} ... g_m^{d_m}`` the class of a point.  Line bundles are integer
vectors in the basis ``g_j``; degrees and slopes are intersection numbers
against a polarization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

MultiDeg = tuple  # tuple[int, ...], one entry per factor


@dataclass(frozen=True)
class Space:
    """Product of projective spaces, given by the factor dimensions."""

    factor_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.factor_dims)
        if not dims:
            raise ValueError("a space needs at least one factor")
        if any(d < 1 for d in dims):
            raise ValueError(f"factor dimensions must be positive, got {dims}")
        object.__setattr__(self, "factor_dims", dims)

    @property
    def m(self) -> int:
        return len(self.factor_dims)

    @property
    def dim(self) -> int:
        return sum(self.factor_dims)

    def basis(self, j: int) -> MultiDeg:
        """Unit multidegree ``e_j`` (0-based factor index)."""
        return tuple(1 if i == j else 0 for i in range(self.m))

    def zero(self) -> MultiDeg:
        return (0,) * self.m

    def ones(self) -> MultiDeg:
        return (1,) * self.m

    def check(self, deg: Sequence[int]) -> MultiDeg:
        deg = tuple(int(x) for x in deg)
        if len(deg) != self.m:
            raise ValueError(f"multidegree {deg} has length {len(deg)}, space has {self.m} factors")
        return deg

    def __str__(self):
        return " x ".join(f"P^{d}" for d in self.factor_dims)


def polarization(space: Space, entries: Iterable[int] | None = None) -> MultiDeg:
    """Return an ample class; all-ones unless ``entries`` is given."""
    if entries is None:
        return space.ones()
    L = space.check(entries)
    if any(x < 1 for x in L):
        raise ValueError(f"polarization entries must be >= 1, got {L}")
    return L


def add(p: Sequence[int], q: Sequence[int]) -> MultiDeg:
    return tuple(a + b for a, b in zip(p, q))


def sub(p: Sequence[int], q: Sequence[int]) -> MultiDeg:
    return tuple(a - b for a, b in zip(p, q))


def scale(c: int, p: Sequence[int]) -> MultiDeg:
    return tuple(c * a for a in p)


def intersection_number(space: Space, classes: Sequence[Sequence[int]]) -> int:
    """Top intersection of the given divisor classes.

    Expands ``prod_c (sum_j c_j g_j)`` with every exponent truncated at
    ``d_j`` and returns the coefficient of ``prod_j g_j^{d_j}``.
    """
    classes = [space.check(c) for c in classes]
    if len(classes) != space.dim:
        raise ValueError(f"need exactly dim = {space.dim} classes, got {len(classes)}")
    dims = space.factor_dims
    # dense convolution: exponent vector -> coefficient
    acc = {space.zero(): 1}
    for c in classes:
        nxt: dict[tuple, int] = {}
        for expo, coef in acc.items():
            for j, cj in enumerate(c):
                if cj == 0 or expo[j] == dims[j]:
                    continue
                e = expo[:j] + (expo[j] + 1,) + expo[j + 1:]
                nxt[e] = nxt.get(e, 0) + coef * cj
        acc = {e: v for e, v in nxt.items() if v}
    return acc.get(dims, 0)


def degree_of(space: Space, c1: Sequence[int], L: Sequence[int] | None = None) -> int:
    """``c1 . L^{dim-1}``."""
    L = polarization(space, L)
    return intersection_number(space, [c1] + [L] * (space.dim - 1))


def slope(space: Space, c1: Sequence[int], rank: int, L: Sequence[int] | None = None) -> Fraction:
    if rank < 1:
        raise ValueError("slope needs a positive rank")
    return Fraction(degree_of(space, c1, L), rank)


def normalize_twist(space: Space, c1: Sequence[int], rank: int, L: Sequence[int] | None = None) -> int:
    """The integer ``k`` with ``1 - d*rank <= deg(c1 - k*rank*e_1) <= 0``.

    Here ``d = deg_L O(1, 0, ..., 0)``; twisting by ``O(-k, 0, ..., 0)`` moves
    the degree by ``-k*rank*d``, so exactly one ``k`` lands in the window.
    """
    if rank < 1:
        raise ValueError("normalization needs a positive rank")
    L = polarization(space, L)
    d = degree_of(space, space.basis(0), L)
    D = degree_of(space, c1, L)
    step = d * rank
    k = -((-D) // step)  # ceil(D / step) == ceil(mu / d)
    if not _in_window(D - k * step, step):
        # defensive: the bracket is authoritative, so fall back to a search
        for k in range(k - 2, k + 3):
            if _in_window(D - k * step, step):
                break
        else:  # pragma: no cover
            raise ArithmeticError("no normalization twist found")
    return k


def _in_window(deg: int, step: int) -> bool:
    return 1 - step <= deg <= 0


def basis_degree_all_ones(space: Space, j: int) -> int:
    """Closed form of ``deg e_j`` against ``O(1, ..., 1)``: a multinomial coefficient."""
    dims = space.factor_dims
    num = math.factorial(space.dim - 1)
    den = math.factorial(dims[j] - 1)
    for i, d in enumerate(dims):
        if i != j:
            den *= math.factorial(d)
    return num // den
