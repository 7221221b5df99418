"""Command-line interface: ``osx <subcommand> <matroid.json> [options]``.

Exit codes: 0 for success or an affirmative verdict, 1 for a negative
verdict or a failed verification, 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .exterior import render
from .reports import Report, jsonable
from .matroid import Matroid, MatroidError

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def load_matroid(source: str, max_n: int = 12, validate: bool = False) -> Matroid:
    """Read a matroid file; ``fixture:NAME`` selects a built-in fixture."""
    if source.startswith("fixture:"):
        from .casestudies import fixture

        try:
            m = fixture(source[len("fixture:"):])
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from None
    else:
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"{source}: {exc.strerror}") from None
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
        try:
            m = Matroid.from_json(obj)
        except MatroidError as exc:
            raise InputError(f"{source}: {exc}") from None
    if m.n > max_n:
        raise InputError(f"{source}: ground set size {m.n} exceeds --max-n {max_n}")
    if validate:
        bad = m.validate_axioms()
        if bad:
            c1, c2, x = bad[0]
            raise InputError(f"{source}: circuit elimination fails for {list(c1)}, {list(c2)} at {x}")
    return m


def report_render(report, fmt: str = "json") -> str:
    """Deterministic text for a report: sorted keys, exact rationals."""
    data = jsonable(report)
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2) + "\n"
    lines: list[str] = []

    def walk(prefix, x):
        if isinstance(x, dict) and x:
            for k in sorted(x):
                walk(f"{prefix}.{k}" if prefix else str(k), x[k])
        else:
            lines.append(f"{prefix}: {json.dumps(x, sort_keys=True)}")

    walk("", data)
    return "\n".join(lines) + "\n"


# -- subcommands ---------------------------------------------------------------


def _count_by_size(sets) -> dict:
    out: dict = {}
    for s in sets:
        out[len(s)] = out.get(len(s), 0) + 1
    return out


def cmd_analyze(m: Matroid, args) -> tuple[dict, int]:
    from .ideal import is_quadratic, hilbert_series, os_ideal

    ideal = os_ideal(m)
    q = is_quadratic(m)
    rep = {
        "ground_set": m.n,
        "rank": m.rank,
        "circuits": len(m.circuits),
        "broken_circuits": _count_by_size(m.broken_circuits()),
        "hilbert": hilbert_series(m),
        "nbc_counts": m.nbc_counts(),
        "dim_I": {d: ideal.dim(d) for d in range(m.n + 1)},
        "dim_J2": q.dim_J2,
        "quadratic": q.verdict,
        "first_gap_degree": q.first_gap_degree,
    }
    return rep, EXIT_OK


def _parse_criterion(text: str):
    if text in ("lcl", "quadratic"):
        return text, None
    if text.startswith("pindep:"):
        try:
            return "pindep", int(text.split(":", 1)[1])
        except ValueError:
            pass
    raise InputError(f"unknown criterion {text!r}; use lcl, pindep:<p> or quadratic")


def cmd_check(m: Matroid, args) -> tuple[dict, int]:
    from .criteria import is_line_closed, is_p_independent_matroid
    from .ideal import is_quadratic

    kind, p = _parse_criterion(args.criterion)
    if kind == "lcl":
        r = is_line_closed(m, args.max_n)
        rep = {"criterion": "lcl", **r.to_json()}
    elif kind == "pindep":
        if not 3 <= p <= m.rank + 1:
            raise InputError(f"p must lie in 3..{m.rank + 1}")
        r = is_p_independent_matroid(m, p, args.max_n)
        rep = {"criterion": f"pindep:{p}", **r.to_json()}
    else:
        r = is_quadratic(m)
        rep = {"criterion": "quadratic", "verdict": r.verdict, "first_gap_degree": r.first_gap_degree,
               "dim_I": r.dim_I, "dim_J2": r.dim_J2}
    return rep, EXIT_OK if rep["verdict"] else EXIT_NEGATIVE


def _degree(args, m: Matroid, default=None) -> int:
    d = args.degree if args.degree is not None else default
    if d is None:
        raise InputError("--degree is required")
    if not 0 <= d <= m.n:
        raise InputError(f"--degree must lie in 0..{m.n}")
    return d


def cmd_annihilator(m: Matroid, args) -> tuple[dict, int]:
    from .ideal import os_ideal

    q = _degree(args, m, m.n - m.rank)
    ann = os_ideal(m).annihilator(q)
    rep = {"degree": q, "dim": ann.dim,
           "leading_monomials": sorted(ann.leading_monomials()),
           "basis": [render(b) for b in ann.rref()]}
    return rep, EXIT_OK


def cmd_groebner(m: Matroid, args):
    from .zelements import groebner_verify

    r = groebner_verify(m)
    return r, EXIT_OK if r.passed else EXIT_NEGATIVE


def cmd_zbasis(m: Matroid, args):
    from .zelements import z_of_nbc, zp_basis_verify

    p = _degree(args, m, m.rank)
    if p > m.rank:
        raise InputError(f"--degree must lie in 0..{m.rank} for zbasis")
    r = zp_basis_verify(m, p)
    r.data["elements"] = {",".join(map(str, t)): render(z_of_nbc(m, t).value) for t in m.nbc_sets(p)}
    return r, EXIT_OK if r.passed else EXIT_NEGATIVE


def cmd_presentation(m: Matroid, args):
    from .presentation import (nbc_prime, relations_first_kind, relations_second_kind,
                               trees_dot, trees_json, verify_relation_basis)

    if args.dot:
        return trees_dot(m), EXIT_OK
    rep = {"nbc_prime": [{"S": list(e.S), "N": list(e.N), "i": e.i} for e in nbc_prime(m)]}
    code = EXIT_OK
    if args.trees:
        rep["trees"] = trees_json(m)
    if args.relations:
        rep["relations"] = [r.to_json() for r in relations_first_kind(m) + relations_second_kind(m)]
    if args.verify_basis:
        r = verify_relation_basis(m)
        rep["verify_basis"] = r
        code = EXIT_OK if r.passed else EXIT_NEGATIVE
    return rep, code


def casestudy_report(name: str) -> Report:
    from . import casestudies as cs
    from .criteria import is_line_closed, is_p_independent_matroid
    from .presentation import expand_to_standard, gamma_tree, neighbours, t_tree

    if name == "cross":
        rep = cs.cross_report()
        m = cs.cross()
        rep.data["N"] = {"1,5": neighbours(m, (1, 5)), "1,3": neighbours(m, (1, 3))}
        rep.data["gamma_1_5"] = sorted(v.base for v in gamma_tree(m, (1, 5)).vertices)
        rep.data["t_1_5"] = t_tree(m, (1, 5)).edges
        rep.data["t_1_3"] = t_tree(m, (1, 3)).edges
        rep.data["expand_5_1"] = {",".join(map(str, t)): c for t, c in sorted(expand_to_standard(m, (1, 3), 5, 1).items())}
        return rep
    if name in ("nine32", "nine_three_2"):
        m = cs.nine_three_2()
        rep = Report("nine32")
        parts = [cs.nine32_constraints(), cs.dimension_audit(m), cs.pencil_analysis()]
        for sub in parts:
            for k, v in sub.checks.items():
                rep.check(f"{sub.name}: {k}", v)
        ind = is_p_independent_matroid(m, 3)
        rep.check("3-independent", ind.verdict)
        rep.check("line-closed", is_line_closed(m).verdict)
        rep.data.update({"fixture": parts[0].data, "dimensions": parts[1].data,
                         "pencil": parts[2].data, "partitions": ind.details})
        return rep
    raise InputError(f"unknown case study {name!r}; use cross or nine32")


def cmd_casestudy(args):
    r = casestudy_report(args.name)
    return r, EXIT_OK if r.passed else EXIT_NEGATIVE


GOLDEN = (
    ("analyze_cross.json", ["analyze", "fixture:cross"]),
    ("analyze_nine32.json", ["analyze", "fixture:nine32"]),
    ("check_cross_pindep3.json", ["check", "fixture:cross", "--criterion", "pindep:3"]),
    ("check_nine32_quadratic.json", ["check", "fixture:nine32", "--criterion", "quadratic"]),
    ("check_nine32_lcl.json", ["check", "fixture:nine32", "--criterion", "lcl"]),
    ("annihilator_cross.json", ["annihilator", "fixture:cross", "--degree", "5"]),
    ("groebner_u24.json", ["groebner-verify", "fixture:uniform(2,4)"]),
    ("zbasis_cross_2.json", ["zbasis", "fixture:cross", "--degree", "2"]),
    ("presentation_cross.json", ["presentation", "fixture:cross", "--trees", "--relations", "--verify-basis"]),
    ("presentation_cross.dot", ["presentation", "fixture:cross", "--dot"]),
    ("casestudy_cross.json", ["casestudy", "cross"]),
    ("casestudy_nine32.json", ["casestudy", "nine32"]),
)


def cmd_golden(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for fname, argv in GOLDEN:
        text, _ = run(argv)
        (out / fname).write_text(text, encoding="utf-8")
        written.append(fname)
    return {"written": written, "directory": str(out)}, EXIT_OK


# -- argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="osx", description="Orlik-Solomon ideals, annihilators and criteria.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_file=True):
        if with_file:
            p.add_argument("file", help="matroid JSON file, or fixture:NAME")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--validate-axioms", action="store_true", help="brute-force circuit elimination check")
        p.add_argument("--max-n", type=int, default=12)
        return p

    common(sub.add_parser("analyze", help="Hilbert series and ideal dimensions"))
    p = common(sub.add_parser("check", help="decide a criterion"))
    p.add_argument("--criterion", required=True, help="lcl, pindep:<p> or quadratic")
    p = common(sub.add_parser("annihilator", help="a graded piece of the annihilator"))
    p.add_argument("--degree", type=int)
    common(sub.add_parser("groebner-verify", help="check that Z is a Groebner basis"))
    p = common(sub.add_parser("zbasis", help="check the basis Z_p"))
    p.add_argument("--degree", type=int)
    p = common(sub.add_parser("presentation", help="trees and relations"))
    p.add_argument("--trees", action="store_true")
    p.add_argument("--relations", action="store_true")
    p.add_argument("--verify-basis", action="store_true")
    p.add_argument("--dot", action="store_true", help="emit the trees in DOT format")
    p = common(sub.add_parser("casestudy", help="run a worked example"), with_file=False)
    p.add_argument("name", choices=("cross", "nine32"))
    p = sub.add_parser("golden", help="regenerate golden report files")
    p.add_argument("--out", default="tests/golden")
    p.add_argument("--format", default="json")
    return ap


_COMMANDS = {
    "analyze": cmd_analyze,
    "check": cmd_check,
    "annihilator": cmd_annihilator,
    "groebner-verify": cmd_groebner,
    "zbasis": cmd_zbasis,
    "presentation": cmd_presentation,
}


def run(argv) -> tuple[str, int]:
    """Run the CLI and return ``(output text, exit code)`` without printing."""
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return "", EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.command == "golden":
            rep, code = cmd_golden(args)
        elif args.command == "casestudy":
            rep, code = cmd_casestudy(args)
        else:
            m = load_matroid(args.file, args.max_n, args.validate_axioms)
            rep, code = _COMMANDS[args.command](m, args)
    except (InputError, MatroidError) as exc:
        return f"error: {exc}\n", EXIT_INPUT
    if isinstance(rep, str):
        return rep, code
    return report_render(rep, getattr(args, "format", "json")), code


def main(argv=None) -> int:
    text, code = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stderr if code == EXIT_INPUT else sys.stdout
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
