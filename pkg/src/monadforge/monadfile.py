"""JSON monad files.

Layout (keys in this order)::

    {"space": [d1, ..., dm],
     "field": {"kind": "QQ"} | {"kind": "GF", "p": p},
     "A": [{"deg": [...], "mult": r}, ...], "B": [...], "C": [...],
     "f": [["poly", ...], ...], "g": [...],      # row-major, column convention
     "metadata": {...}}                           # optional

Polynomials use the ``x<j>_<i>`` grammar and are written in canonical form,
so ``dumps(loads(dumps(M))) == dumps(M)``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .cohomology import LineBundleSum
from .lattice import Space
from .monad import Monad
from .polys import QQ, FieldSpec, ParseError, PolyMatrix

KEYS = ("space", "field", "A", "B", "C", "f", "g", "metadata")


def to_dict(M: Monad) -> dict:
    out = {
        "space": list(M.space.factor_dims),
        "field": {"kind": "QQ"} if M.field.p is None else {"kind": "GF", "p": M.field.p},
    }
    for name in ("A", "B", "C"):
        out[name] = [{"deg": list(d), "mult": m} for d, m in getattr(M, name)]
    out["f"] = M.f.to_strings()
    out["g"] = M.g.to_strings()
    if M.metadata:
        out["metadata"] = M.metadata
    return out


def dumps(M: Monad) -> str:
    return json.dumps(to_dict(M), indent=2) + "\n"


def from_dict(data: dict) -> Monad:
    try:
        unknown = set(data) - set(KEYS)
        if unknown:
            raise ParseError(f"unknown keys {sorted(unknown)}")
        space = Space(tuple(_int(x) for x in data["space"]))
        field = _field(data["field"])
        terms = {}
        for name in ("A", "B", "C"):
            terms[name] = LineBundleSum((tuple(_int(x) for x in s["deg"]), _int(s["mult"]))
                                        for s in data[name])
        f = PolyMatrix.parse(data["f"], space, cols=terms["A"].rank)
        g = PolyMatrix.parse(data["g"], space, cols=terms["B"].rank)
        return Monad(space, terms["A"], terms["B"], terms["C"], f, g, field,
                     metadata=dict(data.get("metadata") or {}))
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"invalid monad file: {exc!r}") from exc


def loads(text: str) -> Monad:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("monad file must hold a JSON object")
    return from_dict(data)


def read(path: str | Path) -> Monad:
    return loads(Path(path).read_text())


def write(M: Monad, path: str | Path) -> None:
    Path(path).write_text(dumps(M))


def _int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"expected an integer, got {x!r}")
    return x


def _field(spec: dict) -> FieldSpec:
    kind = spec.get("kind")
    if kind == "QQ":
        return QQ
    if kind == "GF":
        return FieldSpec(_int(spec["p"]))
    raise ParseError(f"unknown field kind {kind!r}")
