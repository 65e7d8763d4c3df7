"""Command-line interface.

Exit codes: 0 every check PASS/SKIPPED, 1 a FAIL, 2 usage, parse or
precondition error, 3 THEORY VIOLATION.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import oracle
from .connectivity import (
    enumerate_cuts_of_size,
    is_quasi_k_connected,
    minimum_cut,
    nontrivial_cuts_of_size,
    vertex_connectivity,
)
from .corpus import CorpusSpec, generate, planted
from .criticality import is_contraction_critical_quasi5
from .errors import GraphFormatError, PreconditionError, TheoryViolation
from .graph import classify_neighborhood
from .io import FORMATS, format_edge_list, read_graph
from .report import EXIT_CODES, build, dumps_json, graph_block, render_text, worst
from .structures import find_contractible_subgraph

GRAPH_SUFFIXES = (".el", ".g6", ".graph6", ".txt")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load(args):
    g = read_graph(args.file, args.input_format)
    return g, [graph_block(g, Path(args.file).name)]


def cmd_kappa(args):
    g, blk = _load(args)
    cut = minimum_cut(g)
    return build("kappa", "PASS", graphs=blk, result={"kappa": vertex_connectivity(g), "min_cut": cut.sorted() if cut else None})


def cmd_cuts(args):
    g, blk = _load(args)
    if args.nontrivial:
        found = [{"cut": c.sorted(), "sides": [sorted(cert.part1), sorted(cert.part2)]} for c, cert in nontrivial_cuts_of_size(g, args.size)]
    else:
        found = [{"cut": c.sorted()} for c in enumerate_cuts_of_size(g, args.size)]
    return build("cuts", "PASS", graphs=blk, result={"size": args.size, "nontrivial": args.nontrivial, "count": len(found), "cuts": found})


def cmd_quasi(args):
    g, blk = _load(args)
    v = is_quasi_k_connected(g, args.k)
    res = {"k": args.k, "holds": v.holds, "kappa": v.kappa, "reason": v.reason, "cut": v.cut.sorted() if v.cut else None}
    if v.certificate is not None:
        res["sides"] = [sorted(v.certificate.part1), sorted(v.certificate.part2)]
    return build("quasi", "PASS" if v.holds else "FAIL", graphs=blk, result=res)


def cmd_classify(args):
    g, blk = _load(args)
    t = classify_neighborhood(g, args.vertex)
    return build("classify", "PASS", graphs=blk, result={"vertex": args.vertex, "type": t.name, "number": t.value,
                                                          "neighbours": sorted(g.adj[args.vertex])})


def cmd_critical(args):
    g, blk = _load(args)
    v = is_contraction_critical_quasi5(g)
    return build("critical", "PASS" if v.critical else "FAIL", graphs=blk,
                 result={"critical": v.critical, "contractible_edge": list(v.edge) if v.edge else None})


def cmd_find(args):
    g, blk = _load(args)
    res = find_contractible_subgraph(g, args.vertex, relaxed=args.relaxed)
    return build("find", "PASS" if res.witness else "FAIL", graphs=blk, result=res.to_json())


def cmd_verify(args):
    g, blk = _load(args)
    name = Path(args.file).name
    if args.lemma is not None:
        rep = oracle.verify_lemma(g, args.lemma, name)
    else:
        rep = oracle.verify_theorem(g, args.theorem, relaxed=args.relaxed, graph_id=name)
    return build("verify", rep.worst(), graphs=blk, checks=[rep])


def cmd_census(args):
    g, blk = _load(args)
    try:
        entries = oracle.brute_contractible_census(g, args.max_edges)
    except oracle.BudgetExceeded as exc:
        return build("census", "BUDGET", graphs=blk, result={"reason": str(exc), "budget": oracle.budget()})
    except ValueError as exc:
        raise PreconditionError(str(exc), "NOT_QUASI5") from None
    res = {"max_edges": args.max_edges, "count": len(entries),
           "entries": [{"classes": e.as_lists(), "internal_edges": e.internal_edges, "vertex_count": e.vertex_count} for e in entries]}
    return build("census", "PASS", graphs=blk, result=res)


def _gen_files(spec: CorpusSpec):
    """(stem, text) pairs for a spec, planted roles recorded as comments."""
    stem = spec.generator + "".join(f"_{v if not isinstance(v, tuple) else '-'.join(map(str, v))}" for _, v in sorted(spec.params.items()))
    if spec.generator == "planted":
        tid = str(spec.params.get("template", "FIG2_1"))
        for i in range(spec.count):
            inst = planted(tid, spec.seed + i)
            header = f"# planted {tid} seed={inst.seed}\n# roles " + " ".join(f"{r}={v}" for r, v in inst.roles.items()) + "\n"
            yield f"{stem}_s{inst.seed:04d}", header + format_edge_list(inst.graph)
        return
    for i, g in enumerate(generate(spec)):
        yield f"{stem}_s{spec.seed + i:04d}", format_edge_list(g)


def cmd_gen(args):
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    files = []
    for text in args.spec:
        spec = CorpusSpec.parse(text)
        for stem, body in _gen_files(spec):
            path = out / f"{stem}.el"
            path.write_text(body, encoding="ascii")
            files.append(path.name)
    return build("gen", "PASS", result={"specs": args.spec, "directory": str(out), "files": files})


def _sweep_one(path: Path, all_checks: bool, fmt):
    g = read_graph(path, fmt)
    rep = oracle.VerificationReport(path.name)
    rep.checks.append(oracle._timed("quasi5", lambda: _quasi_check(g)))
    for lemma in (1, 2, 3):
        rep.checks.extend(oracle.verify_lemma(g, lemma, path.name).checks)
    if all_checks:
        for theorem in (1, 2):
            for relaxed in (False, True):
                rep.checks.extend(oracle.verify_theorem(g, theorem, relaxed=relaxed, graph_id=path.name).checks)
    return g, rep


def _quasi_check(g):
    fast = is_quasi_k_connected(g, 5)
    detail = {"holds": fast.holds, "reason": fast.reason}
    if g.n <= oracle._kernels.MAX_N:
        brute = oracle.brute_quasi(g, 5)
        if brute.holds != fast.holds:
            return oracle.CheckResult("", "FAIL", {**detail, "oracle": brute.holds}, counterexample=list(brute.cut))
    return oracle.CheckResult("", "PASS", detail)


def cmd_sweep(args):
    root = Path(args.corpus_dir)
    if not root.is_dir():
        raise UsageError(f"{root} is not a directory")
    paths = sorted(p for p in root.iterdir() if p.suffix in GRAPH_SUFFIXES)
    blocks, reps = [], []
    for p in paths:
        g, rep = _sweep_one(p, args.all_checks, args.input_format)
        blocks.append(graph_block(g, p.name))
        reps.append(rep)
    verdict = worst([v for r in reps for v in r.verdicts])
    summary = {"files": len(paths), "verdicts": {}}
    for r in reps:
        for v in r.verdicts:
            summary["verdicts"][v] = summary["verdicts"].get(v, 0) + 1
    return build("sweep", verdict, graphs=blocks, result=summary, checks=reps)


def make_parser() -> argparse.ArgumentParser:
    from . import __version__

    p = _Parser(prog="quasiconn", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--input-format", choices=FORMATS, default=None, help="default: from file suffix")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name, fn, help):
        sp = sub.add_parser(name, help=help, parents=[common])
        sp.add_argument("file")
        sp.set_defaults(fn=fn)
        return sp

    graph_cmd("kappa", cmd_kappa, "vertex connectivity and a minimum cut")
    sp = graph_cmd("cuts", cmd_cuts, "all cuts of a given size")
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--nontrivial", action="store_true")
    sp = graph_cmd("quasi", cmd_quasi, "quasi k-connectivity test")
    sp.add_argument("--k", type=int, default=5)
    sp = graph_cmd("classify", cmd_classify, "neighbourhood type of a degree-4 vertex")
    sp.add_argument("--vertex", type=int, required=True)
    graph_cmd("critical", cmd_critical, "is any edge quasi 5-contractible")
    sp = graph_cmd("find", cmd_find, "constructive search for a contractible subgraph")
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--relaxed", action="store_true", help="require only the two local 4-cuts, not criticality")
    sp = graph_cmd("verify", cmd_verify, "brute-force check of a lemma or theorem")
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--lemma", type=int, choices=sorted(oracle.LEMMA_CHECKS))
    grp.add_argument("--theorem", type=int, choices=sorted(oracle.THEOREM_TYPES))
    sp.add_argument("--relaxed", action="store_true")
    sp = graph_cmd("census", cmd_census, "every contractible class set with few edges")
    sp.add_argument("--max-edges", type=int, default=3, choices=(1, 2, 3))

    sp = sub.add_parser("gen", help="write a generated corpus", parents=[common])
    sp.add_argument("spec", nargs="+", help="e.g. planted:template=FIG2_1,seed=1,count=20")
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(fn=cmd_gen)
    sp = sub.add_parser("sweep", help="run checks over every graph file in a directory", parents=[common])
    sp.add_argument("corpus_dir")
    sp.add_argument("--all-checks", action="store_true", help="add theorem checks to quasi and lemma checks")
    sp.add_argument("-o", "--output", help="report path (stdout if omitted)")
    sp.set_defaults(fn=cmd_sweep)
    return p


def _error_report(argv, kind: str, exc: Exception, verdict: str) -> dict:
    res = {"error": kind, "message": str(exc)}
    code = getattr(exc, "code", None)
    if isinstance(code, str):
        res["code"] = code
    if isinstance(exc, GraphFormatError):
        res.update(line=exc.line, offset=exc.offset)
    if isinstance(exc, TheoryViolation):
        res["evidence"] = exc.evidence
    return build(argv[0] if argv else "", verdict, result=res)


def _run(argv: list[str]) -> tuple[int, dict, str, str | None]:
    try:
        args = make_parser().parse_args(argv)
    except UsageError as exc:
        fmt = "json" if "json" in argv else "text"
        return 2, _error_report(argv, "usage", exc, "ERROR"), fmt, None
    try:
        report = args.fn(args)
    except TheoryViolation as exc:
        report = _error_report([args.command], "theory_violation", exc, "THEORY_VIOLATION")
    except (GraphFormatError, PreconditionError, UsageError, oracle.BudgetExceeded, OSError, ValueError) as exc:
        report = _error_report([args.command], type(exc).__name__, exc, "ERROR")
    return EXIT_CODES[report["verdict"]], report, args.format, getattr(args, "output", None) if args.command == "sweep" else None


def run_command(argv: list[str]) -> tuple[int, dict]:
    """Parse and run; returns (exit code, report)."""
    code, report, _, _ = _run(argv)
    return code, report


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, report, fmt, out = _run(argv)
    text = dumps_json(report) if fmt == "json" else render_text(report)
    if out:
        Path(out).write_text(text, encoding="utf-8")
        print(f"sweep: {report['verdict']} -> {out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    if report["verdict"] == "ERROR":
        print(f"error: {report['result'].get('message')}", file=sys.stderr)
    return code
