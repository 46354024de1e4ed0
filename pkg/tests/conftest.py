"""Shared oracles and the acceptance summary printer.

The oracles here are deliberately naive and share no code with the package:
sympy polynomial expansion for Chow-ring numbers, brute-force monomial
enumeration for section counts, subset enumeration for exterior powers and
Bellman-Ford for difference constraints.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter

import pytest
import sympy


# -- Chow ring -----------------------------------------------------------------

def chow_oracle(dims, classes) -> int:
    """Coefficient of prod g_j^{d_j} in prod_i (sum_j c_ij g_j), by sympy expansion."""
    g = sympy.symbols(f"g1:{len(dims) + 1}")
    expr = sympy.Integer(1)
    for cls in classes:
        expr *= sum(c * gj for c, gj in zip(cls, g))
    poly = sympy.Poly(sympy.expand(expr), *g)
    return int(poly.coeff_monomial(math.prod(gj**d for gj, d in zip(g, dims))))


def degree_oracle(dims, c1, L=None) -> int:
    L = L or [1] * len(dims)
    return chow_oracle(dims, [c1] + [L] * (sum(dims) - 1))


# -- sections ----------------------------------------------------------------------

def monomial_count(n_vars: int, degree: int) -> int:
    """Number of monomials of the given degree, by enumeration."""
    if degree < 0:
        return 0
    return sum(1 for e in itertools.product(range(degree + 1), repeat=n_vars) if sum(e) == degree)


def h0_oracle(dims, p) -> int:
    return math.prod(monomial_count(d + 1, x) for d, x in zip(dims, p))


# -- exterior powers ----------------------------------------------------------------

def wedge_oracle(summands, q) -> Counter:
    """Multidegrees of wedge^q of a split bundle, one per q-subset of its line summands."""
    lines = [tuple(d) for d, m in summands for _ in range(m)]
    out = Counter()
    for idx in itertools.combinations(range(len(lines)), q):
        out[tuple(sum(lines[i][j] for i in idx) for j in range(len(lines[0])))] += 1
    return out


# -- difference constraints ------------------------------------------------------------

def difference_feasible(nodes, edges, m) -> bool:
    """Feasibility of x_v - x_u = d (vector d of length m) by Bellman-Ford per coordinate.

    Each equation becomes two inequalities; the system is feasible iff the
    constraint graph has no negative cycle in any coordinate.
    """
    nodes = list(nodes)
    for j in range(m):
        arcs = []
        for u, v, d in edges:
            arcs.append((u, v, d[j]))   # x_v <= x_u + d
            arcs.append((v, u, -d[j]))  # x_u <= x_v - d
        dist = {n: 0 for n in nodes}
        for _ in range(len(nodes)):
            for u, v, w in arcs:
                if dist[u] + w < dist[v]:
                    dist[v] = dist[u] + w
        if any(dist[u] + w < dist[v] for u, v, w in arcs):
            return False
    return True


def grading_edges(f, g, m):
    """Constraint edges read directly off the matrices' nonzero entries."""
    def degree(mono):
        deg = [0] * m
        for (j, _), e in mono:
            deg[j - 1] += e
        return tuple(deg)

    edges = []
    for mat, src, tgt in ((f, "A", "B"), (g, "B", "C")):
        for r in range(mat.rows):
            for c in range(mat.cols):
                entry = mat[r, c]
                if entry:
                    degs = {degree(mono) for mono in entry.terms}
                    assert len(degs) == 1
                    edges.append(((src, c), (tgt, r), degs.pop()))
    return edges


# -- acceptance summary -------------------------------------------------------------

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one pass/fail line for an acceptance criterion."""
    def record(number: int, ok: bool, detail: str) -> None:
        _ACCEPTANCE[number] = (ok, detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {detail}")
