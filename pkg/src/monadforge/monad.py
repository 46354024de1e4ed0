"""Monads ``0 -> A -f-> B -g-> C -> 0`` of split bundles: validation and invariants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cohomology import LineBundleSum
from .grading import (GradingResult, HomogeneityReport, InhomogeneousError, grading_inference,
                      homogeneity_check)
from .lattice import MultiDeg, Space, degree_of, polarization, sub
from .linalg import batched_rank_mod_p, is_prime, to_mod
from .polys import QQ, FieldSpec, PolyMatrix

DEFAULT_PRIME = 1_000_003
MIN_PROBE_PRIME = 10**6


@dataclass
class Monad:
    """Three split terms and the two maps between them.

    Validity is a computed report (:func:`validate`), not a constructor
    guarantee; only the shapes are checked here.
    """

    space: Space
    A: LineBundleSum
    B: LineBundleSum
    C: LineBundleSum
    f: PolyMatrix
    g: PolyMatrix
    field: FieldSpec = QQ
    metadata: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.f.shape != (self.B.rank, self.A.rank):
            raise ValueError(f"f must be {self.B.rank}x{self.A.rank}, got {self.f.rows}x{self.f.cols}")
        if self.g.shape != (self.C.rank, self.B.rank):
            raise ValueError(f"g must be {self.C.rank}x{self.B.rank}, got {self.g.rows}x{self.g.cols}")
        for term in (self.A, self.B, self.C):
            for deg, _ in term:
                self.space.check(deg)

    def is_homogeneous(self) -> bool:
        return (homogeneity_check(self.f, self.A, self.B, self.space).ok
                and homogeneity_check(self.g, self.B, self.C, self.space).ok)


# -- maximal rank probing ---------------------------------------------------

@dataclass(frozen=True)
class RankVerdict:
    status: str  # "full-rank-probabilistic" | "refuted" | "skipped"
    expected: int
    prime: int
    trials: int
    coordinate_points: int
    bound: Fraction  # per-probe Schwartz-Zippel bound deg(minor)/p
    witness: tuple | None = None
    witness_rank: int | None = None

    @property
    def ok(self) -> bool:
        return self.status == "full-rank-probabilistic"


def _powmod(x: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.ones_like(x)
    base = x % p
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def evaluate_batch(M: PolyMatrix, coords: Sequence[np.ndarray], p: int) -> np.ndarray:
    """Evaluate ``M`` at N points mod p; ``coords[j]`` has shape ``(N, d_j + 1)``."""
    n = coords[0].shape[0]
    out = np.zeros((n, M.rows, M.cols), dtype=np.int64)
    cache: dict = {}
    for r, c, entry in M.nonzero_cells():
        acc = np.zeros(n, dtype=np.int64)
        for mono, coef in entry.terms.items():
            if mono not in cache:
                v = np.ones(n, dtype=np.int64)
                for (j, i), e in mono:
                    v = v * _powmod(coords[j - 1][:, i], e, p) % p
                cache[mono] = v
            acc = (acc + to_mod(coef, p) * cache[mono]) % p
        out[:, r, c] = acc
    return out


def coordinate_points(space: Space) -> list[np.ndarray]:
    """All points with exactly one coordinate equal to 1 in every factor."""
    choices = list(itertools.product(*[range(d + 1) for d in space.factor_dims]))
    arrs = []
    for j, d in enumerate(space.factor_dims):
        a = np.zeros((len(choices), d + 1), dtype=np.int64)
        a[np.arange(len(choices)), [ch[j] for ch in choices]] = 1
        arrs.append(a)
    return arrs


def random_points(space: Space, n: int, p: int, rng: np.random.Generator) -> list[np.ndarray]:
    arrs = []
    for d in space.factor_dims:
        a = rng.integers(0, p, size=(n, d + 1), dtype=np.int64)
        bad = ~a.any(axis=1)
        while bad.any():
            a[bad] = rng.integers(0, p, size=(int(bad.sum()), d + 1), dtype=np.int64)
            bad = ~a.any(axis=1)
        arrs.append(a)
    return arrs


def _max_degree(M: PolyMatrix) -> int:
    return max((sum(e for _, e in mono) for _, _, x in M.nonzero_cells() for mono in x.terms), default=0)


def max_rank_probe(space: Space, M: PolyMatrix, trials: int = 20, p: int = DEFAULT_PRIME,
                   seed: int = 0, include_coordinate_points: bool = True) -> RankVerdict:
    """Probe ``M`` for full rank at coordinate points and random ``F_p`` points.

    A drop at any evaluated point refutes maximal rank, with that point as
    witness.  Otherwise the verdict is probabilistic: a generically full-rank
    matrix shows a spurious drop at a random point with probability at most
    ``deg(maximal minor) / p``.
    """
    if not is_prime(p) or p < MIN_PROBE_PRIME:
        raise ValueError(f"probe prime must be a prime >= {MIN_PROBE_PRIME}, got {p}")
    if p >= 2**31:
        raise ValueError("probe prime must be below 2**31")
    expected = min(M.rows, M.cols)
    bound = Fraction(expected * _max_degree(M), p)
    batches = []
    if include_coordinate_points:
        batches.append(coordinate_points(space))
    if trials > 0:
        batches.append(random_points(space, trials, p, np.random.default_rng(seed)))
    n_coord = batches[0][0].shape[0] if include_coordinate_points else 0
    if not batches:
        return RankVerdict("skipped", expected, p, 0, 0, bound)
    for coords in batches:
        if expected == 0:
            break
        ranks = batched_rank_mod_p(evaluate_batch(M, coords, p), p)
        bad = np.nonzero(ranks < expected)[0]
        if bad.size:
            i = int(bad[0])
            point = tuple(tuple(int(x) for x in a[i]) for a in coords)
            return RankVerdict("refuted", expected, p, trials, n_coord, bound, point, int(ranks[i]))
    return RankVerdict("full-rank-probabilistic", expected, p, trials, n_coord, bound)


# -- validation ---------------------------------------------------------------

@dataclass
class ValidationReport:
    homogeneity_f: HomogeneityReport
    homogeneity_g: HomogeneityReport
    composition_zero: bool
    residual: tuple  # ((row, col, MultiPoly), ...) nonzero cells of g.f
    f_rank: RankVerdict
    g_rank: RankVerdict
    grading: GradingResult | None
    grading_error: str | None = None

    @property
    def failed(self) -> list[str]:
        out = []
        if not self.homogeneity_f.ok:
            out.append("homogeneity_f")
        if not self.homogeneity_g.ok:
            out.append("homogeneity_g")
        if not self.composition_zero:
            out.append("composition_zero")
        for name, v in (("f_max_rank", self.f_rank), ("g_max_rank", self.g_rank)):
            if v.status == "refuted":
                out.append(name)
        if self.grading is None or not self.grading.feasible:
            out.append("grading")
        return out

    @property
    def status(self) -> str:
        if self.failed:
            return "fail"
        if self.f_rank.status == "skipped" or self.g_rank.status == "skipped":
            return "inconclusive"
        return "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "inconclusive": 2}[self.status]

    def records(self) -> list[str]:
        lines = []
        for name, rep in (("homogeneity_f", self.homogeneity_f), ("homogeneity_g", self.homogeneity_g)):
            lines.append(f"check={name} status={'pass' if rep.ok else 'fail'} failures={len(rep.failures)}")
            for cell in rep.failures:
                lines.append(f"check={name} cell={cell.row},{cell.col} expected={_fmt(cell.expected)} "
                             f"actual={'inhomogeneous' if cell.actual is None else _fmt(cell.actual)}")
        lines.append(f"check=composition_zero status={'pass' if self.composition_zero else 'fail'}")
        for r, c, poly in self.residual:
            lines.append(f"check=composition_zero cell={r},{c} residual={poly}")
        for name, v in (("f_max_rank", self.f_rank), ("g_max_rank", self.g_rank)):
            line = (f"check={name} status={v.status} expected_rank={v.expected} prime={v.prime} "
                    f"trials={v.trials} coordinate_points={v.coordinate_points} sz_bound={v.bound}")
            if v.witness is not None:
                line += f" witness={_fmt_point(v.witness)} rank={v.witness_rank}"
            lines.append(line)
        if self.grading is None:
            lines.append(f"check=grading status=error detail={self.grading_error}")
        elif self.grading.feasible:
            lines.append("check=grading status=feasible")
        else:
            lines.append(f"check=grading status=infeasible witness={self.grading.witness}")
        lines.append(f"status={self.status}")
        return lines


def _fmt(deg: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in deg) + ")"


def _fmt_point(point) -> str:
    return "[" + ";".join(",".join(str(x) for x in coords) for coords in point) + "]"


def validate(M: Monad, trials: int = 20, prime: int | None = None, seed: int = 0,
             probe_rank: bool = True) -> ValidationReport:
    """Check homogeneity, ``g.f = 0`` (symbolically), maximal rank and grading."""
    p = prime or (M.field.p if M.field.p is not None and M.field.p >= MIN_PROBE_PRIME else DEFAULT_PRIME)
    hf = homogeneity_check(M.f, M.A, M.B, M.space)
    hg = homogeneity_check(M.g, M.B, M.C, M.space)
    gf = M.g @ M.f
    residual = tuple(gf.nonzero_cells())
    if probe_rank:
        fr = max_rank_probe(M.space, M.f, trials, p, seed)
        gr = max_rank_probe(M.space, M.g, trials, p, seed + 1)
    else:
        fr = RankVerdict("skipped", min(M.f.shape), p, 0, 0, Fraction(0))
        gr = RankVerdict("skipped", min(M.g.shape), p, 0, 0, Fraction(0))
    try:
        grading, err = grading_inference(M.f, M.g, M.space), None
    except InhomogeneousError as exc:
        grading, err = None, str(exc)
    return ValidationReport(hf, hg, not residual, residual, fr, gr, grading, err)


# -- display invariants -------------------------------------------------------

@dataclass(frozen=True)
class BundleInvariants:
    name: str
    rank: int
    c1: MultiDeg
    degree: int
    slope: Fraction | None  # None when degenerate

    @property
    def degenerate(self) -> bool:
        return self.rank <= 0


@dataclass(frozen=True)
class DisplayInvariants:
    E: BundleInvariants
    T: BundleInvariants  # ker g
    Q: BundleInvariants  # coker f


def _bundle(space: Space, name: str, rank: int, c1: MultiDeg, L: MultiDeg) -> BundleInvariants:
    deg = degree_of(space, c1, L)
    return BundleInvariants(name, rank, c1, deg, Fraction(deg, rank) if rank > 0 else None)


def display_invariants(M: Monad, L: Sequence[int] | None = None) -> DisplayInvariants:
    """Rank, ``c_1``, degree and slope of ``E``, ``T = ker g`` and ``Q = coker f``."""
    space = M.space
    L = polarization(space, L)
    a, b, c = (t.c1_in(space) for t in (M.A, M.B, M.C))
    rA, rB, rC = M.A.rank, M.B.rank, M.C.rank
    return DisplayInvariants(
        E=_bundle(space, "E", rB - rA - rC, sub(sub(b, a), c), L),
        T=_bundle(space, "T", rB - rC, sub(b, c), L),
        Q=_bundle(space, "Q", rB - rA, sub(b, a), L),
    )


# -- existence predicates -------------------------------------------------------

@dataclass(frozen=True)
class ExistenceVerdict:
    exists: bool
    rules: tuple[int, ...]  # every satisfied rule
    N: int | None = None

    @property
    def rule(self) -> int | None:
        """The rule to cite: 2 when it holds, else 1."""
        return max(self.rules) if self.rules else None

    def __str__(self):
        if self.exists:
            return f"exists: true (rule {self.rule})"
        return "exists: false"


def _two_rules(dim_param: int, a: int, b: int, c: int) -> tuple[int, ...]:
    rules = []
    if b >= 2 * c + dim_param - 1 and b >= a + c:
        rules.append(1)
    if b >= a + c + dim_param:
        rules.append(2)
    return tuple(rules)


def existence_conditions(variant: str, **params: int | str) -> ExistenceVerdict:
    """Monad existence inequalities.

    ``variant="floystad"`` takes ``k, a, b, c`` (linear monads on ``P^k``).
    ``variant="p1power"`` takes ``n, alpha, beta, gamma`` and ``N_mode``:
    ``"stated"`` uses ``N = 2n + 1``, ``"kunneth"`` uses ``N = 2^(2n) - 1``.
    """
    if variant == "floystad":
        k, a, b, c = (_positive(params, name) for name in ("k", "a", "b", "c"))
        rules = _two_rules(k, a, b, c)
        return ExistenceVerdict(bool(rules), rules)
    if variant == "p1power":
        n, alpha, beta, gamma = (_positive(params, name) for name in ("n", "alpha", "beta", "gamma"))
        mode = params.get("N_mode", "stated")
        if mode == "stated":
            N = 2 * n + 1
        elif mode == "kunneth":
            N = 2 ** (2 * n) - 1
        else:
            raise ValueError(f"N_mode must be 'stated' or 'kunneth', got {mode!r}")
        rules = _two_rules(N, alpha, beta, gamma)
        return ExistenceVerdict(bool(rules), rules, N)
    raise ValueError(f"unknown variant {variant!r}")


def _positive(params: dict, name: str) -> int:
    if name not in params:
        raise ValueError(f"missing parameter {name}")
    v = int(params[name])
    if v < 1:
        raise ValueError(f"parameter {name} must be positive, got {v}")
    return v
