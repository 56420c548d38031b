"""Command-line front end: graph parsing, run orchestration, and report
emission as a human table or deterministic JSON.

Exit codes: 0 all checks passed, 1 check failure, 2 usage/parse error,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cochain import CheckResult, build_coxeter_complex, cohomology
from .configspace import configspace_suite
from .coxeter import parse_graph
from .exactfield import QQ, BudgetExceededError
from .representations import build_rep
from .theorems import (
    KUNNETH_CASES,
    LES_CASES,
    SPLIT_CASES,
    kunneth_check,
    les_check,
    remark_geometric_check,
    split_additivity_check,
    verify_reflection_table,
    verify_trivial_table,
)
from .tor import tor_suite

__all__ = ["main", "run", "emit_report"]

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="coxcoh",
        description="Exact Coxeter cochain cohomology, with configuration-space "
        "and Tor comparisons.",
    )
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("--seed", type=int, default=0, help="seed for modular prime choice")
    p.add_argument(
        "--mode", choices=("exact", "modular", "auto"), default="auto",
        help="rank computation mode",
    )
    p.add_argument("--figures", metavar="DIR", help="also render report figures into DIR")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cohomology", help="cohomology of one group and representation")
    c.add_argument("graph")
    c.add_argument("--rep", default="reflection",
                   help="reflection | trivial[:D] | sign | regular | natural | "
                        "tensor:M | specht:P1,P2,...")

    v = sub.add_parser("verify", help="run a verification suite")
    vsub = v.add_subparsers(dest="suite", required=True)
    vt = vsub.add_parser("trivial")
    vt.add_argument("--n-max", type=int, default=9)
    vr = vsub.add_parser("reflection")
    vr.add_argument("--groups", help="comma-separated group names (default: the full table)")
    vsub.add_parser("kunneth")
    vsub.add_parser("les")
    vsub.add_parser("split")

    cs = sub.add_parser("configspace", help="cube complex versus Coxeter complex")
    cs.add_argument("--n", type=int, required=True)

    t = sub.add_parser("tor", help="fatpoint Tor homology versus Coxeter cohomology")
    t.add_argument("--m", type=int, required=True)
    t.add_argument("--i-max", type=int, required=True)

    ic = sub.add_parser("indcomplex", help="independence complex versus trivial coefficients")
    ic.add_argument("graph")
    return p


def _field_json(spec) -> dict:
    return {"M": spec.M, "minpoly": [int(c) for c in spec.minpoly]}


def _check_json(c) -> dict:
    detail = c.detail
    if not isinstance(detail, (str, dict)):
        detail = str(detail)
    return {"name": c.name, "status": "pass" if c.passed else "fail", "detail": detail}


def _table_check_json(t) -> dict:
    detail = {
        "verdict": t.verdict,
        "expected": {str(k): v for k, v in sorted(t.expected.items())},
        "computed": {str(k): v for k, v in sorted(t.computed.items())},
    }
    if t.verdict == "match-with-degree-shift":
        detail["shift"] = t.shift
    if not t.euler_ok:
        detail["euler"] = "violated"
    return {"name": t.group, "status": "pass" if t.passed else "fail", "detail": detail}


def _report(command, group=None, field=None, space_dims=None, h_dims=None,
            euler=None, mode=None, checks=(), extra=None) -> dict:
    checks = list(checks)
    verdict = "pass" if all(c["status"] == "pass" for c in checks) else "fail"
    out = {
        "command": command,
        "group": group,
        "field": field,
        "space_dims": space_dims,
        "h_dims": h_dims,
        "euler": euler,
        "mode": mode,
        "checks": checks,
        "verdict": verdict,
    }
    if extra:
        out.update(extra)
    return out


def emit_report(report: dict, fmt: str = "table") -> str:
    """Render a report dict; JSON output is byte-stable for fixed inputs."""
    if fmt == "json":
        return json.dumps(report, indent=2)
    lines = [f"command: {report['command']}"]
    if report.get("group"):
        lines.append(f"group: {report['group']}")
    if report.get("field"):
        minpoly = report["field"]["minpoly"]
        lines.append(f"field: Q(2cos(pi/{report['field']['M']})), minpoly {minpoly}")
    if report.get("space_dims") is not None:
        lines.append(f"space dims: {report['space_dims']}")
    if report.get("h_dims") is not None:
        lines.append(f"H dims: {report['h_dims']}")
    if report.get("euler") is not None:
        lines.append(f"euler: {report['euler']}")
    if report.get("mode"):
        lines.append(f"mode: {report['mode']}")
    if report.get("block_structure"):
        lines.append("blocks:")
        for degree, blocks in report["block_structure"].items():
            row = ", ".join(f"{label}:{dim}" for label, dim in blocks)
            lines.append(f"  degree {degree}: {row}")
    if report["checks"]:
        lines.append(f"checks ({len(report['checks'])}):")
        for c in report["checks"]:
            status = "ok  " if c["status"] == "pass" else "FAIL"
            detail = c["detail"]
            if isinstance(detail, dict):
                detail = json.dumps(detail)
            line = f"  [{status}] {c['name']}"
            if detail:
                line += f"  {detail}"
            lines.append(line)
    lines.append(f"verdict: {report['verdict']}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# command implementations


def _cmd_cohomology(args) -> dict:
    g = parse_graph(args.graph)
    rep = build_rep(args.rep, g)
    cx = build_coxeter_complex(g, rep)
    h = cohomology(cx, args.mode, args.seed)
    structure = {str(k): v for k, v in sorted(h.block_structure.items())}
    return _report(
        "cohomology",
        group=str(g),
        field=_field_json(rep.field),
        space_dims=h.space_dims_list(),
        h_dims=h.dims_list(),
        euler=h.euler,
        mode=h.mode,
        checks=[],
        extra={"representation": rep.label, "block_structure": structure},
    )


def _cmd_verify_trivial(args) -> dict:
    rows = verify_trivial_table(args.n_max, args.mode, args.seed)
    return _report(
        "verify trivial",
        mode=args.mode,
        checks=[_table_check_json(t) for t in rows],
    )


def _cmd_verify_reflection(args) -> dict:
    groups = args.groups.split(",") if args.groups else None
    rows = verify_reflection_table(groups, args.mode, args.seed)
    return _report(
        "verify reflection",
        mode=args.mode,
        checks=[_table_check_json(t) for t in rows],
    )


def _cmd_verify_kunneth(args) -> dict:
    checks = []
    for g1name, k1, g2name, k2 in KUNNETH_CASES:
        g1, g2 = parse_graph(g1name), parse_graph(g2name)
        checks.append(
            kunneth_check(g1, build_rep(k1, g1), g2, build_rep(k2, g2),
                          args.mode, args.seed)
        )
    return _report("verify kunneth", mode=args.mode, checks=[_check_json(c) for c in checks])


def _cmd_verify_les(args) -> dict:
    checks = []
    for name, s in LES_CASES:
        g = parse_graph(name)
        res = les_check(g, build_rep("reflection", g), s, args.seed)
        detail = f"H(G)={res.h_whole} H(G_s)={res.h_deleted} H(G^s)={res.h_far}"
        checks.append(CheckResult(f"les[{name},s{s + 1}]", res.passed, detail))
    return _report("verify les", mode=args.mode, checks=[_check_json(c) for c in checks])


def _cmd_verify_split(args) -> dict:
    checks = []
    for name, k1, k2 in SPLIT_CASES:
        g = parse_graph(name)
        checks.append(
            split_additivity_check(g, build_rep(k1, g), build_rep(k2, g),
                                   args.mode, args.seed)
        )
    return _report("verify split", mode=args.mode, checks=[_check_json(c) for c in checks])


def _cmd_configspace(args) -> dict:
    if not 2 <= args.n <= 7:
        raise ValueError("--n must be between 2 and 7")
    mode = args.mode
    if mode == "auto" and args.n >= 6:
        mode = "modular"
    checks, h_chain, h_cox = configspace_suite(args.n, mode, args.seed)
    return _report(
        "configspace",
        group=f"n={args.n}",
        space_dims=h_chain.space_dims_list(),
        h_dims=h_chain.dims_list(),
        euler=h_chain.euler,
        mode=h_chain.mode,
        checks=[_check_json(c) for c in checks],
        extra={"coxeter_h_dims": h_cox.dims_list()},
    )


def _cmd_tor(args) -> dict:
    checks, left, right = tor_suite(args.m, args.i_max, args.mode, args.seed)
    # the top degree of the built complex is truncation padding; report only
    # the meaningful degrees and no Euler characteristic for the slice
    return _report(
        "tor",
        group=f"m={args.m}",
        space_dims=left.space_dims_list()[: args.i_max + 1],
        h_dims=left.dims_list()[: args.i_max + 1],
        euler=None,
        mode=left.mode,
        checks=[_check_json(c) for c in checks],
        extra={"coxeter_sums": {str(k): v for k, v in sorted(right.items())}},
    )


def _cmd_indcomplex(args) -> dict:
    g = parse_graph(args.graph)
    checks, h_cox, h_simp = remark_geometric_check(g, 1, args.mode, args.seed)
    return _report(
        "indcomplex",
        group=str(g),
        field=_field_json(QQ),
        space_dims=h_simp.space_dims_list(),
        h_dims=h_simp.dims_list(),
        euler=h_simp.euler,
        mode=h_simp.mode,
        checks=[_check_json(c) for c in checks],
        extra={"coxeter_h_dims": h_cox.dims_list()},
    )


_COMMANDS = {
    "cohomology": _cmd_cohomology,
    "configspace": _cmd_configspace,
    "tor": _cmd_tor,
    "indcomplex": _cmd_indcomplex,
}


def run(argv) -> int:
    """Parse argv, run the command, emit the report; returns the exit code."""
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        if args.command == "verify":
            handler = {
                "trivial": _cmd_verify_trivial,
                "reflection": _cmd_verify_reflection,
                "kunneth": _cmd_verify_kunneth,
                "les": _cmd_verify_les,
                "split": _cmd_verify_split,
            }[args.suite]
            report = handler(args)
        else:
            report = _COMMANDS[args.command](args)
    except BudgetExceededError as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        print(parser.format_usage(), file=sys.stderr, end="")
        return EXIT_USAGE
    text = emit_report(report, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.figures:
        from .figures import render_report

        render_report(report, args.figures)
    return EXIT_OK if report["verdict"] == "pass" else EXIT_CHECK_FAILED


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
