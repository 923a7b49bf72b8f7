"""The forge command line tool.

Spaces travel as .sset files, simplicial maps as .smap, posets as
.poset, and monotone maps as .pmap; all four are the plain text formats
of textio.  Verification commands print a report tree and exit nonzero
on failures, so the tool works in shell pipelines and CI jobs alike.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .corpus import gen_corpus, load_corpus, save_corpus
from .cylinders import cylinder_reduction, dcr, reduced_cylinder, topological_cylinder
from .desingularize import (
    Certificate,
    desingularize,
    oracle_desingularize,
    zipper_desingularize,
)
from .posets import barratt
from .subdivision import b_nat, last_vertex, sd
from .textio import format_smap, format_sset, parse_pmap, parse_sset
from .verify import (
    format_report,
    merge_reports,
    run_counterexamples,
    verify_dcr_suite,
    verify_lemma_suite,
    verify_main_theorem,
    verify_second_subdivision,
)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _oracle_bound(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("FORGE_ORACLE_BOUND")
    return int(env) if env else 10


def _load_space(path: str):
    return parse_sset(Path(path).read_text())


def cmd_corpus(args) -> int:
    corpus = gen_corpus(args.seed)
    save_corpus(corpus, args.out)
    regular = sum(1 for e in corpus if e.regular)
    print(f"wrote {len(corpus)} members ({regular} regular) to {args.out}")
    return 0


def cmd_verify(args) -> int:
    corpus = load_corpus(args.corpus) if args.corpus else gen_corpus(args.seed)
    reports = []
    if args.suite in ("main", "all"):
        reports.append(verify_main_theorem(corpus))
        reports.append(verify_second_subdivision(corpus))
    if args.suite in ("lemmas", "all"):
        reports.append(verify_lemma_suite(corpus, seed=corpus.seed))
    if args.suite in ("cylinders", "all"):
        reports.append(verify_dcr_suite(corpus))
    merged = merge_reports(f"verify-{args.suite}", reports)
    _emit(format_report(merged, timings=args.timings), args.report)
    if args.report:
        print(f"{merged.count('pass')} pass, {merged.count('fail')} fail"
              f" -> {args.report}")
    return 0 if merged.ok else 1


def cmd_counterexamples(args) -> int:
    report = run_counterexamples()
    _emit(format_report(report, timings=args.timings), args.report)
    return 0 if report.ok else 1


def cmd_sd(args) -> int:
    _emit(format_sset(sd(_load_space(args.space))), args.out)
    return 0


def cmd_barratt(args) -> int:
    _emit(format_sset(barratt(_load_space(args.space))), args.out)
    return 0


def cmd_bnat(args) -> int:
    _emit(format_smap(b_nat(_load_space(args.space))), args.out)
    return 0


def cmd_lastvertex(args) -> int:
    _emit(format_smap(last_vertex(_load_space(args.space))), args.out)
    return 0


def cmd_desing(args) -> int:
    space = _load_space(args.space)
    bound = _oracle_bound(args.bound)
    if args.method == "zipper":
        res = zipper_desingularize(space)
    elif args.method == "oracle":
        try:
            res = oracle_desingularize(space, bound)
        except ValueError as err:
            print(f"error: {err}", file=sys.stderr)
            return 1
    else:
        res = desingularize(space, oracle_bound=bound)
    print(f"certificate {res.certificate.value}")
    print(f"cells {len(space.cells)} -> {len(res.quotient.cells)}")
    if args.out:
        Path(args.out).write_text(format_sset(res.quotient))
    if args.emit_eta:
        Path(args.emit_eta).write_text(format_smap(res.eta))
    return 0 if res.certificate is not Certificate.UNCERTIFIED else 2


def cmd_cylinder(args) -> int:
    phi = parse_pmap(Path(args.phi).read_text())
    if args.topological:
        space, _, _ = topological_cylinder(phi)
        _emit(format_sset(space), args.out)
    elif args.bundle:
        _emit(format_smap(cylinder_reduction(phi).reduction), args.out)
    else:
        _emit(format_sset(reduced_cylinder(phi)), args.out)
    return 0


def cmd_dcr(args) -> int:
    phi = parse_pmap(Path(args.phi).read_text())
    bundle = cylinder_reduction(phi)
    try:
        g, res = dcr(phi, oracle_bound=_oracle_bound(args.bound), bundle=bundle)
    except RuntimeError as err:
        print(f"certificate {Certificate.UNCERTIFIED.value}")
        print(f"error: {err}", file=sys.stderr)
        return 2
    print(f"certificate {res.certificate.value}")
    print(f"cells {len(g.source.cells)} -> {len(g.target.cells)}")
    print("degree injective surjective")
    from .cylinders import injective_in_degree, surjective_in_degree

    for q in range(max(g.source.dim, g.target.dim) + 1):
        inj = "yes" if injective_in_degree(g, q) else "no"
        sur = "yes" if surjective_in_degree(g, q) else "no"
        print(f"{q:6d} {inj:9s} {sur}")
    verdict = "isomorphism" if g.is_isomorphism() else "not-an-isomorphism"
    print(f"verdict {verdict}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forge",
        description="subdivide, desingularize, and verify finite simplicial sets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("corpus", help="generate the verification corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", required=True, help="output directory")
    p.set_defaults(fn=cmd_corpus)

    p = sub.add_parser("verify", help="run a verification campaign")
    p.add_argument("suite", choices=["main", "lemmas", "cylinders", "all"])
    p.add_argument("--corpus", help="directory written by forge corpus")
    p.add_argument("--seed", type=int, default=0, help="regenerate corpus instead")
    p.add_argument("--report", help="write the report here instead of stdout")
    p.add_argument("--timings", action="store_true", help="include per-case seconds")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("counterexamples", help="check both counterexamples")
    p.add_argument("--report")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(fn=cmd_counterexamples)

    for name, fn, outhelp in [
        ("sd", cmd_sd, "subdivided space (.sset)"),
        ("barratt", cmd_barratt, "nerve of the cell poset (.sset)"),
        ("bnat", cmd_bnat, "comparison from the subdivision (.smap)"),
        ("lastvertex", cmd_lastvertex, "last vertex map (.smap)"),
    ]:
        p = sub.add_parser(name)
        p.add_argument("space", help="input space (.sset)")
        p.add_argument("-o", "--out", help=outhelp)
        p.set_defaults(fn=fn)

    p = sub.add_parser("desing", help="desingularize a space")
    p.add_argument("space", help="input space (.sset)")
    p.add_argument("--method", choices=["auto", "zipper", "oracle"], default="auto")
    p.add_argument("--bound", type=int, help="oracle cell bound (default 10)")
    p.add_argument("-o", "--out", help="desingularized space (.sset)")
    p.add_argument("--emit-eta", help="projection onto the quotient (.smap)")
    p.set_defaults(fn=cmd_desing)

    p = sub.add_parser("cylinder", help="cylinder of a monotone map")
    p.add_argument("phi", help="monotone map (.pmap)")
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--reduced", action="store_true", help="reduced cylinder (default)")
    kind.add_argument("--topological", action="store_true", help="unreduced cylinder")
    kind.add_argument("--bundle", action="store_true", help="the reduction map (.smap)")
    p.add_argument("-o", "--out")
    p.set_defaults(fn=cmd_cylinder)

    p = sub.add_parser("dcr", help="desingularized cylinder reduction verdict")
    p.add_argument("phi", help="monotone map (.pmap)")
    p.add_argument("--bound", type=int, help="oracle cell bound (default 10)")
    p.set_defaults(fn=cmd_dcr)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
