"""Command-line front end: check, derive and cohomology over couple documents.

Exit codes are a stable contract: 0 on success, 1 on validation failure,
2 on parse or usage errors.  Reports contain only exact rationals and
integers, never floating point.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .category import is_semistable_cokernel, is_semistable_kernel, is_strict
from .couple import cohomology, couple_report, derive, iterate, omega, validate_couple
from .errors import CoupleValidationError, DocumentError, ExactCouplesError
from .linalg import rat_str
from .serialize import doc_to_couple, dumps_canonical, loads, tree_to_doc


def _fmt_matrix(m, indent="    "):
    lines = []
    for i in range(m.rows):
        lines.append(indent + "[" + "  ".join(rat_str(x) for x in m.data[i]) + "]")
    if not lines:
        lines.append(indent + "[]  (0 rows)")
    return "\n".join(lines)


def _table(rows, out):
    """Print aligned two-column `name: value` lines."""
    if not rows:
        return
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"  {name.ljust(width)}  {value}", file=out)


def _load_couple(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc
    return doc_to_couple(loads(text))


def _strict_word(s):
    return "strict" if s.strict else f"not strict ({s.witness})"


def cmd_check(args) -> int:
    c = _load_couple(args.path)
    be = c.backend
    report = couple_report(c.alpha, c.beta, c.gamma)
    strictness = {
        "alpha": is_strict(c.alpha),
        "beta": is_strict(c.beta),
        "gamma": is_strict(c.gamma),
    }
    ker_g = is_semistable_kernel(be.kernel(c.gamma), probes=args.probes, seed=args.seed)
    cok_b = is_semistable_cokernel(be.cokernel(c.beta), probes=args.probes, seed=args.seed)
    rows = [
        ("backend", be.name),
        ("dim D", str(be.dim(c.D))),
        ("dim E", str(be.dim(c.E))),
    ]
    rows += [(r["name"], "holds" if r["holds"] else "FAILS") for r in report]
    rows += [(f"{name} strictness", _strict_word(s)) for name, s in strictness.items()]
    rows += [
        ("ker(gamma) semistable", ker_g.verdict),
        ("cok(beta) semistable", cok_b.verdict),
    ]
    valid = all(r["holds"] for r in report)
    rows.append(("verdict", "valid" if valid else "NOT an exact couple"))
    _table(rows, sys.stdout)
    if args.certificate:
        for r in report:
            if r["witness"] is not None:
                print(f"witness iso for {r['name']}:")
                print(_fmt_matrix(r["witness"].matrix))
        for name, s in strictness.items():
            if s.inverse is not None:
                print(f"inverse of canonical coim->im map for {name}:")
                print(_fmt_matrix(s.inverse.matrix))
    return 0 if valid else 1


def cmd_derive(args) -> int:
    c = _load_couple(args.path)
    try:
        validate_couple(c.alpha, c.beta, c.gamma)
    except CoupleValidationError as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return 1
    sides = ("left", "right") if args.side == "both" else (args.side,)
    tree = iterate(c, args.depth, probes=args.probes, seed=args.seed, sides=sides)
    doc = tree_to_doc(tree, include_morphisms=args.certificate)
    text = dumps_canonical(doc)
    summary = sys.stdout if args.out else sys.stderr
    be = c.backend
    failed = []
    for k in range(args.depth + 1):
        nodes = sorted(tree.nodes_at_depth(k), key=lambda n: n.path)
        if not nodes:
            break
        dims = ", ".join(
            f"{n.path or 'root'}: D={be.dim(n.couple.D)} E={be.dim(n.couple.E)}"
            for n in nodes
        )
        print(f"  level {k}  {dims}", file=summary)
        failed += [n for n in nodes if n.error is not None]
    for n in failed:
        print(f"  node {n.path or 'root'} failed: {n.error}", file=summary)
    if args.out:
        Path(args.out).write_text(text)
        print(f"  tree document written to {args.out}", file=summary)
    else:
        sys.stdout.write(text)
    return 1 if failed else 0


def cmd_cohomology(args) -> int:
    c = _load_couple(args.path)
    try:
        validate_couple(c.alpha, c.beta, c.gamma)
    except CoupleValidationError as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return 1
    be = c.backend
    coh = cohomology(c.differential())
    om = omega(derive(c, "left"), derive(c, "right"))
    rows = [
        ("backend", be.name),
        ("dim E", str(be.dim(c.E))),
        ("rank of differential", str(coh.partial.matrix.rank())),
        ("dim H-", str(be.dim(coh.Hminus))),
        ("dim H+", str(be.dim(coh.Hplus))),
        ("omega unique", str(om.unique)),
        ("omega monic", str(om.monic)),
        ("omega epic", str(om.epic)),
        ("omega iso", str(om.iso)),
        ("ker(d) semistable", om.ker_verdict.verdict),
        ("cok(d) semistable", om.cok_verdict.verdict),
    ]
    _table(rows, sys.stdout)
    if args.certificate:
        print("omega matrix (E1- -> E1+):")
        print(_fmt_matrix(om.omega.matrix))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exact-couples",
        description="Validate, derive and take cohomology of exact couples "
        "over exact rational arithmetic.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("path", help="couple document (JSON)")
        p.add_argument("--certificate", action="store_true",
                       help="emit full witness morphisms")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for probe-based semistability checks")
        p.add_argument("--probes", type=int, default=10,
                       help="number of random semistability probes")

    p_check = sub.add_parser("check", help="validate the exactness equalities")
    common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_derive = sub.add_parser("derive", help="iterate the derived-couple construction")
    common(p_derive)
    p_derive.add_argument("--side", choices=("left", "right", "both"), default="both")
    p_derive.add_argument("--depth", type=int, default=1)
    p_derive.add_argument("--out", help="write the tree document here "
                          "(default: stdout, summary on stderr)")
    p_derive.add_argument("--parallel", action="store_true",
                          help="accepted as a hint; computation is pure and "
                          "currently runs single-threaded")
    p_derive.set_defaults(func=cmd_derive)

    p_coh = sub.add_parser("cohomology",
                           help="left/right cohomology of the differential and omega")
    common(p_coh)
    p_coh.set_defaults(func=cmd_cohomology)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "depth", 0) < 0:
        print("error: --depth must be nonnegative", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ExactCouplesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
