"""Groundness analysis for a Prolog subset.

Two abstract domains share one goal-dependent fixpoint engine: a two-point
domain (ground / unknown) and a parameter-carrying domain whose values name
the input parameters a variable's groundness depends on.  One run of the
parameter-carrying analysis summarizes every two-point run at once; the
oracle module checks that claim by brute force at small scale.
"""

from .deps import Implication, implies, minimal_implications
from .engine import (
    AnalysisResult,
    MonoDomain,
    PolyDomain,
    analysis_input,
    analyze,
    analyze_program,
    instantiate_result,
)
from .errors import (
    BudgetExceeded,
    DomainMismatch,
    NonTermination,
    ScopeMismatch,
    ScopeOverlap,
    UndefinedPredicate,
    UnknownParam,
)
from .mono_domain import (
    Mode,
    MonoAbs,
    gamma_member,
    mabs_glb,
    mabs_leq,
    mabs_lub,
    mdown,
    munify,
    mup,
    render_mabs,
)
from .poly_domain import (
    PM_INF,
    PM_SUP,
    Assignment,
    PMode,
    PolyAbs,
    all_pmodes,
    pabs_glb,
    pabs_instantiate,
    pabs_leq,
    pabs_lub,
    pdown,
    pm_glb,
    pm_instantiate,
    pm_leq,
    pm_lub,
    punify,
    pup,
    render_pabs,
    render_pmode,
)
from .syntax import (
    Atom,
    Builtin,
    Clause,
    Directive,
    DirectiveError,
    PrologSyntaxError,
    Program,
    Struct,
    UserCall,
    Var,
    parse_atom,
    parse_program,
    parse_term,
    render,
    vars_of,
)
from .unify import FAIL, EqSet, Renamer, Substitution, compose, eq_of, mgu, mgu_pairs

__version__ = "0.1.0"

__all__ = [
    "AnalysisResult",
    "Assignment",
    "Atom",
    "BudgetExceeded",
    "Builtin",
    "Clause",
    "Directive",
    "DirectiveError",
    "DomainMismatch",
    "EqSet",
    "FAIL",
    "Implication",
    "Mode",
    "MonoAbs",
    "MonoDomain",
    "NonTermination",
    "PM_INF",
    "PM_SUP",
    "PMode",
    "PolyAbs",
    "PolyDomain",
    "PrologSyntaxError",
    "Program",
    "Renamer",
    "ScopeMismatch",
    "ScopeOverlap",
    "Struct",
    "Substitution",
    "UndefinedPredicate",
    "UnknownParam",
    "UserCall",
    "Var",
    "all_pmodes",
    "analysis_input",
    "analyze",
    "analyze_program",
    "compose",
    "eq_of",
    "gamma_member",
    "implies",
    "instantiate_result",
    "mabs_glb",
    "mabs_leq",
    "mabs_lub",
    "mdown",
    "mgu",
    "mgu_pairs",
    "minimal_implications",
    "munify",
    "mup",
    "pabs_glb",
    "pabs_instantiate",
    "pabs_leq",
    "pabs_lub",
    "parse_atom",
    "parse_program",
    "parse_term",
    "pdown",
    "pm_glb",
    "pm_instantiate",
    "pm_leq",
    "pm_lub",
    "punify",
    "pup",
    "render",
    "render_mabs",
    "render_pabs",
    "render_pmode",
    "vars_of",
]
