"""Command-line front end.

Every verb writes deterministic lines to stdout; the exit status is 1 when
any FAIL line was produced and 2 on usage errors."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .closed_forms import CertificateError, FormulaId, eval_formula
from .decomposition import Mode, certify, parse_theorem
from .families import FamilyId, build_family
from .graph import GraphError, serialize
from .linalg import charpoly, tree_count
from .matchings import MatchingError, count_matchings, count_matchings_bruteforce
from .poly import Poly
from .splits import APPLICATIONS, SYMMETRIC_INSTANCES, check_symmetric_instance, run_applications
from .trees import TreeError, count_trees_by_enumeration, invariant_trees_bruteforce, \
    parse_group, symmetry_class_count
from .verify import check_formula, highdim_check, holes_count


class UsageError(Exception):
    pass


def parse_range(text: str) -> List[int]:
    """'a..b' (inclusive) or a single integer."""
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}, expected a..b") from None
    if b < a:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(a, b + 1))


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad rational {text!r}") from None


def _family(text: str) -> FamilyId:
    try:
        return FamilyId.parse(text)
    except GraphError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Report:
    """Collects output lines; FAIL lines decide the exit code."""

    def __init__(self):
        self.lines: List[str] = []
        self.failures = 0

    def add(self, line: str, failed: bool = False):
        self.lines.append(line)
        if failed:
            self.failures += 1
        print(line, flush=True)

    def write(self, path: Optional[str]):
        if path:
            with open(path, "w") as fh:
                fh.write("\n".join(self.lines) + "\n")


# ---------------------------------------------------------------------------
# verbs

def cmd_build(args, rep: Report):
    g = build_family(args.family, args.n, q=args.q, d=args.d)
    text = serialize(g)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        rep.add(f"wrote {g.num_vertices} vertices to {args.out}")
    else:
        sys.stdout.write(text)


def cmd_charpoly(args, rep: Report):
    g = build_family(args.family, args.n, q=args.q, d=args.d)
    p = charpoly(g.adjacency()) if g.num_vertices else Poly([1])
    rep.add(p.to_text())


def cmd_trees(args, rep: Report):
    g = build_family(args.family, args.n, q=args.q, d=args.d)
    t = tree_count(g)
    rep.add(str(t))
    if args.oracle:
        e = count_trees_by_enumeration(g)
        ok = Fraction(e) == Fraction(t)
        rep.add(f"ORACLE trees enumeration {_fmt(e)} {'PASS' if ok else 'FAIL'}", not ok)


def cmd_matchings(args, rep: Report):
    g = build_family(args.family, args.n, q=args.q, d=args.d)
    m = count_matchings(g).value
    rep.add(_fmt(m))
    if args.oracle:
        b = count_matchings_bruteforce(g).value
        ok = b == m
        rep.add(f"ORACLE matchings bruteforce {_fmt(b)} {'PASS' if ok else 'FAIL'}", not ok)


def cmd_symmetry(args, rep: Report):
    kinds = parse_group(args.group)
    c = symmetry_class_count(args.family, args.n, kinds)
    rep.add(f"{c.value} {c.method}")
    if args.oracle:
        b = invariant_trees_bruteforce(args.family, args.n, kinds)
        ok = b == c.value
        rep.add(f"ORACLE invariant trees {b} {'PASS' if ok else 'FAIL'}", not ok)


def cmd_verify_cert(args, rep: Report):
    thm = parse_theorem(args.theorem)
    mode = Mode.parse(args.mode) if args.mode else None
    for n in args.n:
        c = certify(thm, n, mode)
        rep.add(c.line(), c.failed)


def cmd_verify_formula(args, rep: Report):
    for n in args.n:
        fc = check_formula(args.formula, n, args.precision, args.oracle)
        rep.add(fc.line(), not fc.passed)


def cmd_verify_splits(args, rep: Report):
    names = [args.name] if args.name else None
    for chk in run_applications(args.max_n, names):
        rep.add(chk.line(), not chk.ok)
    if args.symmetric:
        for fam, n, kind in SYMMETRIC_INSTANCES:
            chk = check_symmetric_instance(fam, n, kind)
            rep.add(chk.line(), not chk.ok)


def cmd_formula(args, rep: Report):
    for n in args.n:
        try:
            value, cert = eval_formula(args.formula, n, args.precision)
        except CertificateError as exc:
            rep.add(f"VALUE FAIL {exc}", True)
            continue
        if isinstance(value, Poly):
            rep.add(f"{value.to_text()}  BITS {cert.bits}")
        else:
            rep.add(cert.line(value))


def cmd_census(args, rep: Report):
    for n in range(1, args.max_n + 1):
        rep.add(holes_count(n, args.method).line())


def cmd_highdim(args, rep: Report):
    ok, got, _enc = highdim_check(args.d, args.n)
    status = "PASS" if ok else "FAIL"
    rep.add(f"HIGHDIM d={args.d} n={args.n} degree={got.degree} {status}", not ok)


# ---------------------------------------------------------------------------
# parser

def _graph_args(p):
    p.add_argument("family", type=_family)
    p.add_argument("n", type=int)
    p.add_argument("--q", type=_fraction, default=None, help="weight parameter of path families")
    p.add_argument("--d", type=int, default=None, help="dimension for GRID_D")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="squarish",
                                 description="Exact lattice-graph spectra, trees and matchings.")
    ap.add_argument("--out", default=None, help="also write the report (or graph) to this path")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("build", help="print a family member in the exchange format")
    _graph_args(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("charpoly", help="characteristic polynomial of the adjacency matrix")
    _graph_args(p)
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("trees", help="spanning-tree count by the Matrix-Tree theorem")
    _graph_args(p)
    p.add_argument("--oracle", action="store_true", help="cross-check by enumeration")
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("matchings", help="weighted perfect-matching count")
    _graph_args(p)
    p.add_argument("--oracle", action="store_true", help="cross-check by brute force")
    p.set_defaults(func=cmd_matchings)

    p = sub.add_parser("symmetry", help="spanning trees invariant under a symmetry group")
    p.add_argument("family", type=_family)
    p.add_argument("n", type=int)
    p.add_argument("group", help="h, hv, r2, r, diag, ...")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("verify", help="similarity certificates, formula checks, splits")
    vs = p.add_subparsers(dest="what", required=True)
    c = vs.add_parser("cert")
    c.add_argument("theorem", help="e.g. THM2_1 or 2.1")
    c.add_argument("--n", type=parse_range, required=True)
    c.add_argument("--mode", default=None, help="explicit-basis | charpoly | smith")
    c.set_defaults(func=cmd_verify_cert)
    c = vs.add_parser("formula")
    c.add_argument("formula", help="e.g. EQ2_5")
    c.add_argument("--n", type=parse_range, required=True)
    c.add_argument("--precision", type=int, default=256)
    c.add_argument("--oracle", action="store_true")
    c.set_defaults(func=cmd_verify_formula)
    c = vs.add_parser("splits")
    c.add_argument("--name", choices=sorted(APPLICATIONS), default=None)
    c.add_argument("--max-n", type=int, default=3)
    c.add_argument("--symmetric", action="store_true", help="also run the plain symmetric instances")
    c.set_defaults(func=cmd_verify_splits)

    p = sub.add_parser("formula", help="certified evaluation of a closed form")
    p.add_argument("formula")
    p.add_argument("--n", type=parse_range, required=True)
    p.add_argument("--precision", type=int, default=256)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("census", help="matching counts of the holed squares")
    p.add_argument("which", choices=["holes"])
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--method", choices=["auto", "direct", "split"], default="auto")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("highdim", help="charpoly of a d-dimensional grid vs its encoded expansion")
    p.add_argument("action", choices=["verify"])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_highdim)
    return ap


def run(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    rep = Report()
    try:
        if args.verb == "formula" or getattr(args, "what", None) == "formula":
            FormulaId.parse(args.formula)
        args.func(args, rep)
    except (GraphError, MatchingError, TreeError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"squarish: error: {msg}", file=sys.stderr)
        return 2
    if args.verb != "build":
        rep.write(args.out)
    return 1 if rep.failures else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
