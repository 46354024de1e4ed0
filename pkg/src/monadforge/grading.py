"""Entry-degree checks and twist inference for two-map complexes.

A nonzero entry ``M[r][c]`` of a map between sums of line bundles must be a
section of ``O(target_r - source_c)``.  For a complex ``A -f-> B -g-> C`` the
unknown twists satisfy the difference constraints

    b_r - a_c = deg f[r][c],    c_s - b_r = deg g[s][r]

over the nonzero entries, which :func:`grading_inference` solves by
propagation along the constraint graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .cohomology import LineBundleSum
from .lattice import MultiDeg, Space, add, sub
from .polys import PolyMatrix


class InhomogeneousError(ValueError):
    """An entry has terms of different multidegrees, or the wrong one."""


@dataclass(frozen=True)
class CellFailure:
    row: int
    col: int
    expected: MultiDeg
    actual: MultiDeg | None  # None: entry mixes multidegrees

    def __str__(self):
        got = "inhomogeneous" if self.actual is None else str(self.actual)
        return f"cell ({self.row},{self.col}): expected {self.expected}, got {got}"


@dataclass(frozen=True)
class HomogeneityReport:
    failures: tuple[CellFailure, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures


def homogeneity_check(M: PolyMatrix, source: LineBundleSum, target: LineBundleSum,
                      space: Space) -> HomogeneityReport:
    """Check every entry against ``target twist - source twist``."""
    src = source.expanded()
    tgt = target.expanded()
    if (M.rows, M.cols) != (len(tgt), len(src)):
        raise ValueError(f"matrix shape {M.shape} does not match ranks ({len(tgt)}, {len(src)})")
    failures = []
    for r, c, entry in M.nonzero_cells():
        expected = sub(tgt[r], src[c])
        actual = entry.multidegree(space.m)
        if actual != expected:
            failures.append(CellFailure(r, c, expected, actual))
    return HomogeneityReport(tuple(failures))


Node = tuple  # (term, index) with term in "ABC"


@dataclass(frozen=True)
class CycleWitness:
    """A closed walk whose signed entry degrees do not sum to zero.

    ``steps`` lists ``(from_node, to_node, delta)``: following the walk, the
    twist of ``to_node`` would have to equal that of ``from_node`` plus
    ``delta``.
    """

    steps: tuple[tuple[Node, Node, MultiDeg], ...]
    discrepancy: MultiDeg

    def nodes(self) -> list[Node]:
        return [s[0] for s in self.steps]

    def __str__(self):
        walk = " -> ".join(f"{t}{i}" for t, i in self.nodes())
        first = self.steps[0][0]
        return f"cycle {walk} -> {first[0]}{first[1]} sums to {self.discrepancy}"


@dataclass(frozen=True)
class GradingResult:
    feasible: bool
    source: tuple[MultiDeg, ...] = ()
    middle: tuple[MultiDeg, ...] = ()
    target: tuple[MultiDeg, ...] = ()
    pinned: tuple[Node, ...] = ()
    witness: CycleWitness | None = None

    def terms(self) -> tuple[LineBundleSum, LineBundleSum, LineBundleSum]:
        if not self.feasible:
            raise ValueError("no twist assignment exists")
        return tuple(LineBundleSum((d, 1) for d in twists)
                     for twists in (self.source, self.middle, self.target))


def grading_inference(f: PolyMatrix, g: PolyMatrix, space: Space,
                      anchor: Sequence[int] | None = None) -> GradingResult:
    """Solve for twists of ``A``, ``B``, ``C`` making ``f`` and ``g`` homogeneous.

    Each connected component of the constraint graph is pinned at its first
    source node to ``anchor`` (default ``(-1, ..., -1)``); components without
    a source node are pinned at their first node to the zero twist.  Zero
    entries impose nothing.
    """
    if g.cols != f.rows:
        raise ValueError(f"maps not composable: g is {g.shape}, f is {f.shape}")
    m = space.m
    anchor = space.check(anchor) if anchor is not None else (-1,) * m

    adj: dict[Node, list[tuple[Node, MultiDeg]]] = {}
    nodes = ([("A", c) for c in range(f.cols)] + [("B", r) for r in range(f.rows)]
             + [("C", s) for s in range(g.rows)])
    for n in nodes:
        adj[n] = []

    def link(u: Node, v: Node, d: MultiDeg) -> None:
        adj[u].append((v, d))
        adj[v].append((u, tuple(-x for x in d)))

    for mat, (lo, hi) in ((f, ("A", "B")), (g, ("B", "C"))):
        for r, c, entry in mat.nonzero_cells():
            d = entry.multidegree(m)
            if d is None:
                raise InhomogeneousError(f"entry ({r},{c}) = {entry} is not multihomogeneous")
            link((lo, c), (hi, r), d)

    value: dict[Node, MultiDeg] = {}
    parent: dict[Node, tuple[Node, MultiDeg] | None] = {}
    pinned = []
    for root in nodes:
        if root in value:
            continue
        comp = _component(root, adj)
        start = next((n for n in nodes if n in comp and n[0] == "A"), root)
        value[start] = anchor if start[0] == "A" else (0,) * m
        parent[start] = None
        pinned.append(start)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v, d in adj[u]:
                want = add(value[u], d)
                if v not in value:
                    value[v] = want
                    parent[v] = (u, d)
                    queue.append(v)
                elif value[v] != want:
                    return GradingResult(False, pinned=tuple(pinned),
                                         witness=_witness(u, v, d, parent, value))
    return GradingResult(
        True,
        source=tuple(value[("A", c)] for c in range(f.cols)),
        middle=tuple(value[("B", r)] for r in range(f.rows)),
        target=tuple(value[("C", s)] for s in range(g.rows)),
        pinned=tuple(pinned),
    )


def _component(root: Node, adj) -> set:
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for v, _ in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def _witness(u: Node, v: Node, d: MultiDeg, parent, value) -> CycleWitness:
    def chain(n):
        out = [n]
        while parent[n] is not None:
            n = parent[n][0]
            out.append(n)
        return out

    cu, cv = chain(u), chain(v)
    common = set(cu) & set(cv)
    lca = next(n for n in cu if n in common)
    down = cu[: cu.index(lca) + 1][::-1]  # lca ... u
    up = cv[: cv.index(lca) + 1]  # v ... lca
    steps = []
    for a, b in zip(down, down[1:]):
        steps.append((a, b, parent[b][1]))
    steps.append((u, v, d))
    for a, b in zip(up, up[1:]):
        steps.append((a, b, tuple(-x for x in parent[a][1])))
    discrepancy = sub(add(value[u], d), value[v])
    return CycleWitness(tuple(steps), discrepancy)
