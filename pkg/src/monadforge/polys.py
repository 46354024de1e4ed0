"""Exact multigraded polynomials and polynomial matrices.

Variables are written ``x<j>_<i>``: coordinate ``i`` (0-based) of factor ``j``
(1-based).  A monomial is a tuple of ``((j, i), exponent)`` pairs sorted by
variable; terms are kept in graded-lex order over the factor-major variable
list ``x1_0 > x1_1 > ... > x2_0 > ...``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .lattice import Space
from .linalg import is_prime, rank, to_mod

Var = tuple  # (factor, coord)
Monomial = tuple  # tuple[(Var, int), ...]

MAX_EXPONENT = 2**31 - 1
_END = (float("inf"),)


class ParseError(ValueError):
    """Malformed polynomial or monad text."""


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: the rationals (``p is None``) or ``F_p``."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __str__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = FieldSpec()


def make_monomial(pairs: Iterable[tuple[Var, int]]) -> Monomial:
    acc: dict[Var, int] = {}
    for var, e in pairs:
        if e:
            acc[var] = acc.get(var, 0) + e
    return tuple(sorted((v, e) for v, e in acc.items() if e))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return make_monomial(a + b)


def mono_degree(mono: Monomial, m: int) -> tuple[int, ...]:
    deg = [0] * m
    for (j, _), e in mono:
        if j > m:
            raise ValueError(f"variable of factor {j} outside a space with {m} factors")
        deg[j - 1] += e
    return tuple(deg)


def _term_key(mono: Monomial):
    total = sum(e for _, e in mono)
    return (-total, tuple((j, i, -e) for (j, i), e in mono) + (_END,))


def _var_str(var: Var, e: int) -> str:
    j, i = var
    return f"x{j}_{i}" if e == 1 else f"x{j}_{i}^{e}"


def _coef_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class MultiPoly:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
        self.terms: dict[Monomial, Fraction] = {
            m: clean[m] for m in sorted(clean, key=_term_key) if clean[m]
        }
        self._hash = None

    # constructors
    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls()

    @classmethod
    def constant(cls, c) -> "MultiPoly":
        return cls({(): c})

    @classmethod
    def var(cls, factor: int, coord: int, exponent: int = 1) -> "MultiPoly":
        if factor < 1 or coord < 0 or exponent < 0:
            raise ValueError(f"bad variable x{factor}_{coord}^{exponent}")
        return cls({make_monomial([((factor, coord), exponent)]): 1})

    @classmethod
    def parse(cls, text: str, space: Space | None = None) -> "MultiPoly":
        return parse_poly(text, space)

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return MultiPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return MultiPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = MultiPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # structure
    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def term_degrees(self, m: int) -> set:
        return {mono_degree(mono, m) for mono in self.terms}

    def multidegree(self, m: int) -> tuple[int, ...] | None:
        """The common multidegree of all terms, or None if mixed (or zero)."""
        degs = self.term_degrees(m)
        return next(iter(degs)) if len(degs) == 1 else None

    def is_homogeneous(self, m: int) -> bool:
        return len(self.term_degrees(m)) <= 1

    def evaluate(self, point: Sequence[Sequence], p: int | None = None):
        total = 0 if p is not None else Fraction(0)
        for mono, c in self.terms.items():
            if p is None:
                v = c
                for (j, i), e in mono:
                    v *= Fraction(point[j - 1][i]) ** e
                total += v
            else:
                v = to_mod(c, p)
                for (j, i), e in mono:
                    v = v * pow(int(point[j - 1][i]) % p, e, p) % p
                total = (total + v) % p
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for k, (mono, c) in enumerate(self.terms.items()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = "*".join(_var_str(v, e) for v, e in mono)
            if not body:
                body = _coef_str(a)
            elif a != 1:
                body = f"{_coef_str(a)}*{body}"
            if k == 0:
                out.append(body if sign == "+" else "-" + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"


def _coerce(x) -> MultiPoly:
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MultiPoly.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


_VAR_RE = re.compile(r"x(\d+)_(\d+)(?:\^(\d+))?")
_NUM_RE = re.compile(r"(\d+)(?:/(\d+))?")


def parse_poly(text: str, space: Space | None = None) -> MultiPoly:
    """Parse the ``x<j>_<i>`` grammar; whitespace is ignored.

    A coefficient may also be written ``num/den``; integer coefficients are
    the usual case.
    """
    s = "".join(text.replace("−", "-").split())
    if not s:
        raise ParseError("empty polynomial")
    pos = 0
    terms: dict[Monomial, Fraction] = {}
    first = True
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' at position {pos} in {text!r}")
        first = False
        coef = Fraction(sign)
        pairs: list[tuple[Var, int]] = []
        num = _NUM_RE.match(s, pos)
        if num:
            den = int(num.group(2)) if num.group(2) else 1
            if den == 0:
                raise ParseError(f"zero denominator in {text!r}")
            coef *= Fraction(int(num.group(1)), den)
            pos = num.end()
            if pos < len(s) and s[pos] == "*":
                pos += 1
                pos = _parse_vars(s, pos, pairs, space, text)
        else:
            pos = _parse_vars(s, pos, pairs, space, text)
        mono = make_monomial(pairs)
        terms[mono] = terms.get(mono, 0) + coef
    return MultiPoly(terms)


def _parse_vars(s: str, pos: int, pairs: list, space: Space | None, text: str) -> int:
    while True:
        mv = _VAR_RE.match(s, pos)
        if not mv:
            raise ParseError(f"malformed token at position {pos} in {text!r}")
        j, i = int(mv.group(1)), int(mv.group(2))
        e = int(mv.group(3)) if mv.group(3) else 1
        if j < 1:
            raise ParseError(f"unknown variable x{j}_{i}: factors are numbered from 1")
        if space is not None and (j > space.m or i > space.factor_dims[j - 1]):
            raise ParseError(f"unknown variable x{j}_{i} on {space}")
        if e > MAX_EXPONENT:
            raise ParseError(f"exponent {e} too large")
        pairs.append(((j, i), e))
        pos = mv.end()
        if pos < len(s) and s[pos] == "*":
            pos += 1
            continue
        return pos


class PolyMatrix:
    """Rectangular matrix of :class:`MultiPoly`.

    A map ``A -> B`` of bundle sums is stored with ``rank B`` rows and
    ``rank A`` columns, acting on column vectors.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence], cols: int | None = None):
        rows = [tuple(_coerce(x) if not isinstance(x, str) else parse_poly(x) for x in r) for r in entries]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        self.rows = len(rows)
        self.cols = cols
        self.entries: tuple[tuple[MultiPoly, ...], ...] = tuple(rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PolyMatrix":
        z = MultiPoly()
        return cls([[z] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def parse(cls, rows: Sequence[Sequence[str]], space: Space | None = None, cols: int | None = None):
        return cls([[parse_poly(x, space) for x in r] for r in rows], cols=cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    @property
    def T(self) -> "PolyMatrix":
        return PolyMatrix([[self.entries[r][c] for r in range(self.rows)] for c in range(self.cols)], cols=self.rows)

    def __neg__(self):
        return PolyMatrix([[-x for x in r] for r in self.entries], cols=self.cols)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for r in range(self.rows):
            row = []
            for c in range(other.cols):
                acc = MultiPoly()
                for k in range(self.cols):
                    a = self.entries[r][k]
                    if a:
                        b = other.entries[k][c]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, cols=other.cols)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)

    def nonzero_cells(self):
        for r, row in enumerate(self.entries):
            for c, x in enumerate(row):
                if x:
                    yield r, c, x

    def evaluate(self, point: Sequence[Sequence], p: int | None = None) -> list[list]:
        return [[x.evaluate(point, p) for x in r] for r in self.entries]

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.entries]

    @staticmethod
    def hstack(blocks: Sequence["PolyMatrix"]) -> "PolyMatrix":
        rows = {b.rows for b in blocks}
        if len(rows) != 1:
            raise ValueError("hstack needs equal row counts")
        n = rows.pop()
        return PolyMatrix([sum((b.entries[r] for b in blocks), ()) for r in range(n)],
                          cols=sum(b.cols for b in blocks))

    @staticmethod
    def vstack(blocks: Sequence["PolyMatrix"]) -> "PolyMatrix":
        cols = {b.cols for b in blocks}
        if len(cols) != 1:
            raise ValueError("vstack needs equal column counts")
        return PolyMatrix([r for b in blocks for r in b.entries], cols=cols.pop())

    def __str__(self):
        return "[" + ",\n ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries) + "]"

    def __repr__(self):
        return f"PolyMatrix({self.to_strings()!r})"


def matrix_compose(g: PolyMatrix, f: PolyMatrix) -> PolyMatrix:
    """The product ``g . f`` (apply ``f`` first)."""
    return g @ f


def check_point(point: Sequence[Sequence], space: Space | None = None, p: int | None = None) -> None:
    if space is not None:
        if len(point) != space.m:
            raise ValueError(f"point has {len(point)} factors, space has {space.m}")
        for j, (coords, d) in enumerate(zip(point, space.factor_dims)):
            if len(coords) != d + 1:
                raise ValueError(f"factor {j + 1} needs {d + 1} coordinates, got {len(coords)}")
    for j, coords in enumerate(point):
        vals = [to_mod(x, p) for x in coords] if p is not None else [Fraction(x) for x in coords]
        if not any(vals):
            raise ValueError(f"factor {j + 1} coordinates are all zero: not a point of projective space")


def matrix_evaluate_rank(M: PolyMatrix, point: Sequence[Sequence], field: FieldSpec = QQ,
                         space: Space | None = None) -> int:
    check_point(point, space, field.p)
    if M.rows == 0 or M.cols == 0:
        return 0
    return rank(M.evaluate(point, field.p), field.p)
