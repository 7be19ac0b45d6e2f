"""Command line front end.

Exit codes: 0 on success, 1 for input problems (parse errors, bad
directives, bad assignments), 2 for analysis failures (undefined
predicates, fixpoint budget exhausted), 3 when `check` finds a
counterexample.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .deps import minimal_implications
from .engine import MonoDomain, PolyDomain, analyze_program, instantiate_result
from .errors import BudgetExceeded, DomainMismatch, NonTermination, UndefinedPredicate
from .mono_domain import Mode
from .poly_domain import Assignment
from .report import corpus_row, render_json, render_text, write_corpus_report
from .syntax import DirectiveError, PrologSyntaxError, parse_program, render

INPUT_ERROR = 1
ANALYSIS_ERROR = 2
CHECK_FAILED = 3


def _load(path: str):
    try:
        source = Path(path).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    return parse_program(source), source


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _domain_for(program, mode: str | None):
    params = program.directive.params
    if mode is None:
        mode = "poly" if params else "mono"
    return MonoDomain() if mode == "mono" else PolyDomain(params)


def _analyze(path: str, mode: str | None):
    program, _ = _load(path)
    dom = _domain_for(program, mode)
    return program, analyze_program(program, dom)


def cmd_analyze(args) -> int:
    program, result = _analyze(args.path, args.mode)
    name = Path(args.path).name
    if args.format == "json":
        print(json.dumps(render_json(result, program, name), indent=2))
    else:
        print(render_text(result, program, name), end="")
    return 0


def _parse_assignment(text: str, params) -> Assignment:
    mapping = {}
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        name, sep, value = piece.partition("=")
        name, value = name.strip(), value.strip()
        if not sep or value not in ("g", "u"):
            raise ValueError(f"bad assignment entry {piece!r}; expected name=g or name=u")
        if name not in params:
            raise ValueError(f"unknown parameter {name!r}; program has {', '.join(params)}")
        if name in mapping:
            raise ValueError(f"parameter {name!r} assigned twice")
        mapping[name] = Mode.G if value == "g" else Mode.U
    missing = [p for p in params if p not in mapping]
    if missing:
        raise ValueError(f"missing assignment for {', '.join(missing)}")
    return Assignment(mapping)


def cmd_instantiate(args) -> int:
    program, _ = _load(args.path)
    params = program.directive.params
    if not params:
        return _fail("program directive binds no parameters; nothing to instantiate", INPUT_ERROR)
    try:
        kappa = _parse_assignment(args.assign, params)
    except ValueError as exc:
        return _fail(str(exc), INPUT_ERROR)
    result = analyze_program(program, PolyDomain(params))
    mono = instantiate_result(result, kappa)
    name = Path(args.path).name
    if args.format == "json":
        print(json.dumps(render_json(mono, program, name), indent=2))
    else:
        print(render_text(mono, program, name), end="")
    return 0


def cmd_deps(args) -> int:
    program, result = _analyze(args.path, "poly")
    if not program.directive.params:
        return _fail("program directive binds no parameters; no dependencies to report", INPUT_ERROR)
    implications = minimal_implications(result.goal_output)
    for key in sorted(result.points):
        implications += minimal_implications(result.points[key], at=key)
    if args.format == "json":
        payload = {
            "program": Path(args.path).name,
            "goal": render(result.goal),
            "params": list(result.params),
            "implications": [
                {
                    "antecedents": list(imp.antecedents),
                    "consequents": list(imp.consequents),
                    "at": None if imp.at is None else list(imp.at),
                }
                for imp in implications
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"% goal: {render(result.goal)}")
        if implications:
            for imp in implications:
                print(imp.render())
        else:
            print("no dependencies")
    return 0


def cmd_check(args) -> int:
    from .oracle import (
        Universe,
        run_lattice_suite,
        run_mono_safety_trials,
        run_poly_safety_trials,
        run_precision_trials,
    )

    universe = Universe((("a", 0), ("f", 1), ("g", 2)), depth=args.depth, pool=2)
    suites = [
        run_lattice_suite(args.max_params),
        run_precision_trials(args.trials, args.seed),
        run_mono_safety_trials(args.trials, args.seed + 1, universe),
        run_poly_safety_trials(args.trials, args.seed + 2, universe, args.max_params),
    ]
    failed = False
    for suite in suites:
        status = "PASS" if suite.ok else "FAIL"
        print(f"{status} {suite.name}: {suite.trials} checks")
        if not suite.ok:
            failed = True
            print(f"  first counterexample: {suite.failures[0]}")
    return CHECK_FAILED if failed else 0


def corpus_sources():
    """Name/source pairs for the bundled corpus programs."""
    root = resources.files("polyground").joinpath("corpus")
    out = []
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".pl"):
            out.append((entry.name, entry.read_text()))
    return out


def cmd_corpus(args) -> int:
    rows = []
    for name, source in corpus_sources():
        program = parse_program(source)
        rows.append(corpus_row(name, source, program))
    csv_path, png_path = write_corpus_report(rows, args.out_dir)
    for row in rows:
        print(
            f"{row['program']}: poly {row['poly_ms']}ms vs sweep of "
            f"{row['assignments']} mono runs avg {row['mono_avg_ms']}ms "
            f"(ratio {row['ratio']})"
        )
    print(f"wrote {csv_path}")
    print(f"wrote {png_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyground",
        description="Groundness analysis for a Prolog subset, with parameterized inputs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a program and print the annotated result")
    p.add_argument("path")
    p.add_argument("--mode", choices=("mono", "poly"), default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("instantiate", help="analyze once, then instantiate the parameters")
    p.add_argument("path")
    p.add_argument("--assign", required=True, metavar="alpha=g,beta=u")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_instantiate)

    p = sub.add_parser("deps", help="print groundness dependencies between goal variables")
    p.add_argument("path")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_deps)

    p = sub.add_parser("check", help="run the randomized and exhaustive self-checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--max-params", type=int, default=2)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("corpus", help="time the bundled corpus and write CSV plus a chart")
    p.add_argument("--out-dir", default="corpus-report")
    p.set_defaults(fn=cmd_corpus)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit:
        raise
    except (PrologSyntaxError, DirectiveError, DomainMismatch, BudgetExceeded, ValueError) as exc:
        return _fail(str(exc), INPUT_ERROR)
    except UndefinedPredicate as exc:
        return _fail(str(exc), ANALYSIS_ERROR)
    except NonTermination as exc:
        return _fail(str(exc), ANALYSIS_ERROR)


if __name__ == "__main__":
    sys.exit(main())
