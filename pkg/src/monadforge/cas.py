"""Export a monad as a standalone Macaulay2 verification script."""

from __future__ import annotations

from .monad import Monad
from .polys import PolyMatrix


def _matrix(name: str, M: PolyMatrix) -> str:
    if M.rows == 0 or M.cols == 0:
        return f"{name} = map(R^{M.rows}, R^{M.cols}, 0);"
    rows = ", ".join("{" + ", ".join(str(x) for x in r) + "}" for r in M.entries)
    return f"{name} = matrix(R, {{{rows}}});"


def export_macaulay2(M: Monad) -> str:
    """Script declaring the multigraded ring and both maps, then asserting
    ``g*f == 0`` and that the maximal minors of each map have no common zero
    on the product of projective spaces (saturation by the irrelevant ideal).
    """
    space = M.space
    names = [f"x{j}_{i}" for j, d in enumerate(space.factor_dims, start=1) for i in range(d + 1)]
    degrees = []
    for j, d in enumerate(space.factor_dims):
        unit = "{" + ",".join("1" if s == j else "0" for s in range(space.m)) + "}"
        degrees += [unit] * (d + 1)
    kk = "QQ" if M.field.p is None else f"ZZ/{M.field.p}"
    irrelevant = ", ".join(
        "ideal(" + ", ".join(f"x{j}_{i}" for i in range(d + 1)) + ")"
        for j, d in enumerate(space.factor_dims, start=1))
    lines = [
        f"-- monad on {space}",
        f"-- A = {M.A}",
        f"-- B = {M.B}",
        f"-- C = {M.C}",
        f"kk = {kk};",
        f"R = kk[{', '.join(names)}, Degrees => {{{', '.join(degrees)}}}];",
        _matrix("f", M.f),
        _matrix("g", M.g),
        f"assert(numrows f == {M.f.rows} and numcols f == {M.f.cols});",
        f"assert(numrows g == {M.g.rows} and numcols g == {M.g.cols});",
        "assert(g * f == 0);",
        f"irr = intersect({irrelevant});",
    ]
    for name, mat in (("f", M.f), ("g", M.g)):
        r = min(mat.rows, mat.cols)
        if r:
            lines.append(f"assert(saturate(minors({r}, {name}), irr) == ideal(1_R));")
    lines.append('print "all assertions passed";')
    return "\n".join(lines) + "\n"
