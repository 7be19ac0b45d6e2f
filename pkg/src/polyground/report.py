"""Rendering analysis results: annotated listings, JSON, corpus timings.

The text listing interleaves the analyzed clauses with the abstraction
holding at each program point.  The JSON form is stable and validated by
REPORT_SCHEMA.  The corpus runner times one parameter-carrying run against
the full sweep of two-point runs it replaces and writes a CSV plus a chart.
"""

from __future__ import annotations

import csv
import statistics
import time
from pathlib import Path

from .engine import MonoDomain, PolyDomain, analyze, analyze_program
from .mono_domain import Mode, render_mabs
from .poly_domain import Assignment, pabs_instantiate, render_pabs
from .syntax import Builtin, UserCall, occurrence_order, render

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["program", "goal", "params", "points", "goal_output", "mode", "iterations"],
    "additionalProperties": False,
    "properties": {
        "program": {"type": "string"},
        "goal": {"type": "string"},
        "mode": {"enum": ["mono", "poly"]},
        "params": {"type": "array", "items": {"type": "string"}},
        "iterations": {"type": "integer", "minimum": 0},
        "goal_output": {
            "type": "object",
            "additionalProperties": {"$ref": "#/definitions/abs_value"},
        },
        "points": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["clause", "index", "abs"],
                "additionalProperties": False,
                "properties": {
                    "clause": {"type": "integer", "minimum": 0},
                    "index": {"type": "integer", "minimum": 0},
                    "abs": {
                        "type": "object",
                        "additionalProperties": {"$ref": "#/definitions/abs_value"},
                    },
                },
            },
        },
    },
    "definitions": {
        "abs_value": {
            "oneOf": [
                {"enum": ["g", "u"]},
                {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
            ]
        }
    },
}


def _clause_var_order(clause) -> list[str]:
    seen: list[str] = []
    nodes = [clause.head]
    for lit in clause.body:
        nodes.append(lit.atom if isinstance(lit, UserCall) else lit)
    for node in nodes:
        args = node.args if isinstance(node, Builtin) else (node,)
        for arg in args:
            for name in occurrence_order(arg):
                if name not in seen:
                    seen.append(name)
    return seen


def _render_abs(result, abs_, order) -> str:
    if result.domain_name == "mono":
        return render_mabs(abs_, order)
    return render_pabs(abs_, order)


def _value_json(result, value):
    if result.domain_name == "mono":
        return "g" if value is Mode.G else "u"
    return [list(group) for group in value.sorted_sets()]


def _abs_json(result, abs_, order) -> dict:
    return {x: _value_json(result, abs_[x]) for x in order}


def render_text(result, program, name: str) -> str:
    goal_order = occurrence_order(result.goal)
    lines = [
        f"% program: {name}",
        f"% mode: {result.domain_name}",
        f"% goal: {render(result.goal)}",
    ]
    if result.params:
        lines.append(f"% params: {', '.join(result.params)}")
    lines += [
        f"% input: {_render_abs(result, result.in_abs, goal_order)}",
        f"% output: {_render_abs(result, result.goal_output, goal_order)}",
        f"% iterations: {result.iterations}",
        "",
    ]
    for clause in program.clauses:
        order = _clause_var_order(clause)

        def note(k: int, indent: str) -> str:
            abs_ = result.points.get((clause.id, k))
            if abs_ is None:
                return f"{indent}% unreached"
            return f"{indent}% {_render_abs(result, abs_, order)}"

        if not clause.body:
            lines.append(f"{render(clause.head)}.")
            lines.append(note(0, "    "))
        else:
            lines.append(f"{render(clause.head)} :-")
            lines.append(note(0, "    "))
            for k, lit in enumerate(clause.body):
                end = "," if k < len(clause.body) - 1 else "."
                lines.append(f"    {render(lit)}{end}")
                lines.append(note(k + 1, "    "))
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"


def render_json(result, program, name: str) -> dict:
    goal_order = occurrence_order(result.goal)
    points = []
    for (cid, k) in sorted(result.points):
        clause = program.clauses[cid]
        order = _clause_var_order(clause)
        points.append(
            {"clause": cid, "index": k, "abs": _abs_json(result, result.points[(cid, k)], order)}
        )
    return {
        "program": name,
        "goal": render(result.goal),
        "params": list(result.params),
        "points": points,
        "goal_output": _abs_json(result, result.goal_output, goal_order),
        "mode": result.domain_name,
        "iterations": result.iterations,
    }


# --------------------------------------------------------------------------
# corpus timing report

CSV_COLUMNS = (
    "program",
    "lines",
    "goal",
    "params",
    "assignments",
    "poly_ms",
    "mono_avg_ms",
    "ratio",
    "iterations",
)


def _time_ms(fn, repeats: int = 5) -> float:
    fn()  # warm caches before measuring
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append((time.perf_counter() - t0) * 1000.0)
    return statistics.median(samples)


def corpus_row(name: str, source: str, program) -> dict:
    params = program.directive.params
    dom = PolyDomain(params)
    res = analyze_program(program, dom)
    poly_ms = _time_ms(lambda: analyze_program(program, dom))
    goal = program.directive.goal
    mono = MonoDomain()
    mono_samples = []
    for kappa in Assignment.enumerate(params):
        in_mono = pabs_instantiate(res.in_abs, kappa)
        mono_samples.append(_time_ms(lambda: analyze(program, goal, in_mono, mono)))
    mono_avg = statistics.fmean(mono_samples) if mono_samples else 0.0
    assignments = len(Assignment.enumerate(params))
    total_mono = mono_avg * assignments
    return {
        "program": name,
        "lines": len(source.splitlines()),
        "goal": render(goal),
        "params": len(params),
        "assignments": assignments,
        "poly_ms": round(poly_ms, 3),
        "mono_avg_ms": round(mono_avg, 3),
        "ratio": round(poly_ms / total_mono, 3) if total_mono else 0.0,
        "iterations": res.iterations,
    }


def write_corpus_report(rows: list[dict], out_dir) -> tuple[Path, Path]:
    """Write corpus.csv and timings.png under out_dir; returns both paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "corpus.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    names = [r["program"] for r in rows]
    poly = [r["poly_ms"] for r in rows]
    sweep = [r["mono_avg_ms"] * r["assignments"] for r in rows]
    xs = range(len(rows))
    fig, ax = plt.subplots(figsize=(max(6.0, 1.6 * len(rows)), 4.0))
    width = 0.38
    ax.bar([x - width / 2 for x in xs], poly, width, label="one parameter run")
    ax.bar([x + width / 2 for x in xs], sweep, width, label="full two-point sweep")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(names, rotation=20, ha="right")
    ax.set_ylabel("milliseconds")
    ax.set_title("One parameter-carrying run vs. the sweep it replaces")
    ax.legend()
    fig.tight_layout()
    png_path = out / "timings.png"
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    return csv_path, png_path
