"""monadforge command line.

Machine-readable records go to stdout (one per line), a human summary to
stderr.  Exit codes: 0 pass, 1 violation, 2 inconclusive, 3 input error.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path
from typing import Sequence

from . import cas, monadfile
from .cohomology import kunneth_h
from .constructions import PairedSpaceParams, build_homogenized_monad, build_monad
from .grading import InhomogeneousError, grading_inference
from .lattice import Space
from .monad import DEFAULT_PRIME, display_invariants, existence_conditions, validate
from .polys import QQ, FieldSpec, ParseError
from .stability import hoppe_scan

EXIT_PASS, EXIT_VIOLATION, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "--deg -2,0" through as a value
        self._negative_number_matcher = re.compile(r"^-\d[-\d,]*$")

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_INPUT)


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _fmt(deg) -> str:
    return "(" + ",".join(str(x) for x in deg) + ")"


def _say(*lines: str) -> None:
    for line in lines:
        print(line)


def _note(*lines: str) -> None:
    for line in lines:
        print(line, file=sys.stderr)


def _load(path: str):
    try:
        return monadfile.read(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


# -- commands ----------------------------------------------------------------

def cmd_build(args) -> int:
    params = PairedSpaceParams(args.pairs, args.k, args.alpha or ())
    field = QQ if args.field in (None, "QQ") else FieldSpec(int(args.field))
    if args.homogenize:
        if params.n != 1:
            raise InputError("--homogenize needs a single pair (grading is infeasible for n >= 2)")
        M = build_homogenized_monad(params, field)
    else:
        M = build_monad(params, field)
    monadfile.write(M, args.out)
    _say(f"wrote={args.out} space={_fmt(M.space.factor_dims)} f={M.f.rows}x{M.f.cols} "
         f"g={M.g.rows}x{M.g.cols} rankB={M.B.rank}")
    _note(f"A = {M.A}", f"B = {M.B}", f"C = {M.C}")
    return EXIT_PASS


def cmd_verify(args) -> int:
    M = _load(args.file)
    report = validate(M, trials=args.trials, prime=args.prime, seed=args.seed,
                      probe_rank=not args.skip_rank)
    _say(*report.records())
    _note(f"{args.file}: {report.status}" + (f" ({', '.join(report.failed)})" if report.failed else ""))
    return report.exit_code


def cmd_invariants(args) -> int:
    M = _load(args.file)
    inv = display_invariants(M, args.polarization)
    E, T = inv.E, inv.T
    _say(f"rankE={E.rank} c1E={_fmt(E.c1)} degT={T.degree} muT={T.slope}")
    for b in (inv.E, inv.T, inv.Q):
        slope = "degenerate" if b.degenerate else str(b.slope)
        _say(f"bundle={b.name} rank={b.rank} c1={_fmt(b.c1)} deg={b.degree} mu={slope}")
    if E.degenerate:
        _note("E has nonpositive rank: degenerate monad")
    return EXIT_PASS


def cmd_cohomology(args) -> int:
    space = Space(args.space)
    table = kunneth_h(space, space.check(args.deg))
    for t, h in enumerate(table):
        if h or args.all:
            _say(f"t={t} h={h}")
    _note(f"O{_fmt(args.deg)} on {space}: chi={table.euler_characteristic()}")
    return EXIT_PASS


def cmd_scan(args) -> int:
    M = _load(args.file)
    report = hoppe_scan(M, args.polarization, box=args.box, max_q=args.max_q)
    for pw in report.powers:
        _say(f"q={pw.q} rank={pw.rank} c1={_fmt(pw.c1)} mu={pw.slope} k_norm={pw.k_norm}")
    for c in report.cells:
        _say(f"q={c.q} p={_fmt(c.p)} twist={_fmt(c.twist)} delta={c.delta} status={c.status} h0={c.dimension}")
    _note(f"{len(report.cells)} cells: {len(report.nonzero)} nonzero, "
          f"{len(report.inconclusive)} inconclusive (box {report.box})")
    if args.strict:
        if report.nonzero:
            return EXIT_VIOLATION
        if report.inconclusive:
            return EXIT_INCONCLUSIVE
    return EXIT_PASS


def cmd_infer_grading(args) -> int:
    M = _load(args.file)
    res = grading_inference(M.f, M.g, M.space, args.anchor)
    if not res.feasible:
        _say("feasible=false", f"witness={res.witness}")
        for a, b, d in res.witness.steps:
            _say(f"step={a[0]}{a[1]}->{b[0]}{b[1]} delta={_fmt(d)}")
        return EXIT_VIOLATION
    A, B, C = res.terms()
    _say("feasible=true", f"A={A}", f"B={B}", f"C={C}")
    return EXIT_PASS


def cmd_exist(args) -> int:
    params: dict = {}
    for item in args.params.split(","):
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"bad parameter {item!r}; use name=value")
        params[key.strip()] = int(value)
    if args.variant == "p1power":
        params["N_mode"] = args.n_mode
    verdict = existence_conditions(args.variant, **params)
    _say(str(verdict))
    if verdict.N is not None:
        _note(f"N = {verdict.N} ({args.n_mode})")
    return EXIT_PASS


def cmd_export_cas(args) -> int:
    M = _load(args.file)
    script = cas.export_macaulay2(M)
    Path(args.out).write_text(script)
    _say(f"wrote={args.out} lines={script.count(chr(10))}")
    return EXIT_PASS


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="monadforge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="write a builder monad to a file")
    p.add_argument("--pairs", type=_ints, required=True, help="a_1,...,a_n")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=_ints, default=None, help="exponent per pair (default 1)")
    p.add_argument("--homogenize", action="store_true", help="relabel terms by grading inference (n=1)")
    p.add_argument("--field", default=None, help="QQ (default) or a prime")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="validate a monad file")
    p.add_argument("file")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--skip-rank", action="store_true", help="do not probe maximal rank")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invariants", help="rank, c1, degree, slope of E, T, Q")
    p.add_argument("file")
    p.add_argument("--polarization", type=_ints, default=None)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("cohomology", help="h^t of a line bundle")
    p.add_argument("--space", type=_ints, required=True)
    p.add_argument("--deg", type=_ints, required=True)
    p.add_argument("--all", action="store_true", help="print zero entries too")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("scan", help="Hoppe-type vanishing scan of ker g")
    p.add_argument("file")
    p.add_argument("--box", type=int, default=4)
    p.add_argument("--max-q", type=int, default=2)
    p.add_argument("--polarization", type=_ints, default=None)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("infer-grading", help="solve for homogeneous term twists")
    p.add_argument("file")
    p.add_argument("--anchor", type=_ints, default=None)
    p.set_defaults(func=cmd_infer_grading)

    p = sub.add_parser("exist", help="monad existence inequalities")
    p.add_argument("--variant", choices=("floystad", "p1power"), required=True)
    p.add_argument("--params", required=True, help="e.g. k=2,a=1,b=4,c=1")
    p.add_argument("--n-mode", choices=("stated", "kunneth"), default="stated")
    p.set_defaults(func=cmd_exist)

    p = sub.add_parser("export-cas", help="write a Macaulay2 verification script")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_cas)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ParseError, InhomogeneousError, ValueError) as exc:
        _note(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
