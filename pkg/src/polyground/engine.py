"""Goal-dependent least-fixpoint analysis over an abstract domain.

The engine is domain-generic: it sees abstractions only through a small
adapter interface, so the two-point and the parameter-carrying analyses run
through the same code.

Call patterns are memoized.  A call is normalized onto canonical
argument-position variables ($1..$n) by abstractly unifying it against a
canonical callee atom; two calls that are variants of each other therefore
produce the same pattern.  Memo entries start at the domain's infimum and
only ever grow (each update is a lub with the prior value), and the
worklist re-evaluates the callers of whatever changed, so the run reaches
the least fixpoint of the finite lattice without widening.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any

from .errors import DomainMismatch, NonTermination, UndefinedPredicate
from .mono_domain import (
    Mode,
    MonoAbs,
    gamma_member,
    mabs_leq,
    mabs_lub,
    mdown,
    mup,
    munify,
    render_mabs,
)
from .poly_domain import (
    PM_INF,
    PM_SUP,
    Assignment,
    PMode,
    PolyAbs,
    pabs_instantiate,
    pabs_leq,
    pabs_lub,
    pdown,
    pm_instantiate,
    pup,
    punify,
    render_pabs,
    render_pmode,
)
from .syntax import Atom, Builtin, Program, UserCall, Var, vars_of
from .unify import FAIL, Renamer, eq_of, mgu


class MonoDomain:
    """Adapter exposing the two-point domain to the engine."""

    name = "mono"

    def bottom(self, scope):
        return MonoAbs.const(scope, Mode.G)

    def top(self, scope):
        return MonoAbs.const(scope, Mode.U)

    def leq(self, a, b):
        return mabs_leq(a, b)

    def lub(self, a, b):
        return mabs_lub(a, b)

    def aunify(self, a, in_abs, b, cur_abs, renamer):
        return munify(a, in_abs, b, cur_abs, renamer)

    def unify_eq(self, t1, t2, cur_abs):
        res = mgu(t1, t2)
        if res is FAIL:
            return self.bottom(cur_abs.scope)
        e = eq_of(res)
        return mup(e, mdown(e, cur_abs))

    def ground(self, names, cur_abs):
        return cur_abs.set_all(names, Mode.G)

    def render(self, a, order=None):
        return render_mabs(a, order)

    def value_to_json(self, v):
        return v.value

    def input_value(self, binding: str):
        """Interpret a directive binding; only the literal modes make sense here."""
        if binding == "g":
            return Mode.G
        if binding == "u":
            return Mode.U
        raise DomainMismatch(
            f"binding {binding!r} names a parameter; the two-point analysis needs literal g/u"
        )


class PolyDomain:
    """Adapter exposing the parameter-carrying domain to the engine."""

    name = "poly"

    def __init__(self, params=()):
        self.params = tuple(params)

    def bottom(self, scope):
        return PolyAbs.const(scope, PM_INF)

    def top(self, scope):
        return PolyAbs.const(scope, PM_SUP)

    def leq(self, a, b):
        return pabs_leq(a, b)

    def lub(self, a, b):
        return pabs_lub(a, b)

    def aunify(self, a, in_abs, b, cur_abs, renamer):
        return punify(a, in_abs, b, cur_abs, renamer)

    def unify_eq(self, t1, t2, cur_abs):
        res = mgu(t1, t2)
        if res is FAIL:
            return self.bottom(cur_abs.scope)
        e = eq_of(res)
        return pup(e, pdown(e, cur_abs))

    def ground(self, names, cur_abs):
        return cur_abs.set_all(names, PM_INF)

    def render(self, a, order=None):
        return render_pabs(a, order)

    def value_to_json(self, v):
        return [list(s) for s in v.sorted_sets()]

    def input_value(self, binding: str):
        if binding == "g":
            return PM_INF
        if binding == "u":
            return PM_SUP
        return PMode([[binding]])


# how each built-in transforms the current abstraction; kept as data so the
# conservative identity choices can be revisited without touching the engine
BUILTIN_BEHAVIOUR = {
    "unify-eq": "solve-eq",
    "lt": "identity",
    "gt": "identity",
    "le": "identity",
    "ge": "identity",
    "arith-eq": "identity",
    "arith-ne": "identity",
    "is": "bind-left-ground",
    "true": "identity",
    "fail": "bottom",
}


def builtin_transfer(lit: Builtin, cur_abs, dom):
    behaviour = BUILTIN_BEHAVIOUR[lit.kind]
    if behaviour == "identity":
        return cur_abs
    if behaviour == "bottom":
        return dom.bottom(cur_abs.scope)
    if behaviour == "solve-eq":
        return dom.unify_eq(lit.args[0], lit.args[1], cur_abs)
    if behaviour == "bind-left-ground":
        return dom.ground(vars_of(lit.args[0]), cur_abs)
    raise ValueError(f"unknown behaviour {behaviour!r}")


@dataclass(frozen=True)
class CallPattern:
    """A predicate together with its abstract entry, by argument position."""

    pred: str
    arity: int
    entry: tuple

    def __repr__(self):
        inner = ", ".join(repr(v) for v in self.entry)
        return f"{self.pred}/{self.arity}({inner})"


def _canon_names(arity: int) -> tuple[str, ...]:
    return tuple(f"${i}" for i in range(1, arity + 1))


def _canon_atom(pred: str, arity: int) -> Atom:
    return Atom(pred, tuple(Var(n) for n in _canon_names(arity)))


@dataclass
class AnalysisResult:
    domain_name: str
    goal: Atom
    params: tuple
    in_abs: Any
    goal_output: Any
    memo: dict
    points: dict  # (clause id, literal index) -> abstraction over the clause scope
    iterations: int
    history: list | None = field(default=None, compare=False)


def analyze(program: Program, goal: Atom, in_abs, dom, max_evals: int = 100_000,
            collect_history: bool = False) -> AnalysisResult:
    """Run the analysis to its least fixpoint.

    `in_abs` must be scoped exactly over the goal's variables.  The result
    records the output description of the goal, the memo table of call
    patterns, and a per-program-point annotation: point (c, 0) holds the
    description right after entering clause c's head, point (c, k) the one
    after its k-th body literal, each the lub over every analyzed pattern
    that reaches the point.
    """
    if in_abs.scope != vars_of(goal):
        raise ValueError("input abstraction must be scoped over the goal variables")
    run = _Run(program, dom, max_evals, collect_history)
    goal_pattern = run.pattern_for(goal, in_abs)
    run.ensure(goal_pattern)
    run.solve()
    points = run.annotate()
    canon = _canon_atom(goal_pattern.pred, goal_pattern.arity)
    goal_out = dom.aunify(canon, run.memo[goal_pattern], goal, in_abs, run.renamer)
    params = tuple(getattr(dom, "params", ()))
    return AnalysisResult(
        domain_name=dom.name,
        goal=goal,
        params=params,
        in_abs=in_abs,
        goal_output=goal_out,
        memo=dict(run.memo),
        points=points,
        iterations=run.evals,
        history=run.history,
    )


class _Run:
    def __init__(self, program, dom, max_evals, collect_history):
        self.program = program
        self.dom = dom
        self.max_evals = max_evals
        self.renamer = Renamer()
        self.memo: dict[CallPattern, Any] = {}
        self.callers: dict[CallPattern, set] = {}
        self.queue: deque = deque()
        self.queued: set = set()
        self.evals = 0
        self.history: list | None = [] if collect_history else None

    def pattern_for(self, atom: Atom, cur_abs) -> CallPattern:
        pred, arity = atom.key
        if not self.program.clauses_for(pred, arity):
            raise UndefinedPredicate(pred, arity)
        names = _canon_names(arity)
        canon = _canon_atom(pred, arity)
        projected = self.dom.aunify(atom, cur_abs, canon, self.dom.top(names), self.renamer)
        return CallPattern(pred, arity, tuple(projected[n] for n in names))

    def ensure(self, pat: CallPattern):
        if pat not in self.memo:
            self.memo[pat] = self.dom.bottom(_canon_names(pat.arity))
            self.push(pat)

    def push(self, pat: CallPattern):
        if pat not in self.queued:
            self.queued.add(pat)
            self.queue.append(pat)

    def solve(self):
        while self.queue:
            pat = self.queue.popleft()
            self.queued.discard(pat)
            self.evals += 1
            if self.evals > self.max_evals:
                raise NonTermination(f"evaluation cap {self.max_evals} exceeded")
            out = self.eval_pattern(pat)
            if not self.dom.leq(out, self.memo[pat]):
                self.memo[pat] = self.dom.lub(self.memo[pat], out)
                if self.history is not None:
                    self.history.append(dict(self.memo))
                for caller in self.callers.get(pat, ()):
                    self.push(caller)

    def eval_pattern(self, pat: CallPattern, points: dict | None = None):
        dom = self.dom
        names = _canon_names(pat.arity)
        canon = _canon_atom(pat.pred, pat.arity)
        pattern_abs = self._entry_abs(pat)
        out = dom.bottom(names)
        for clause in self.program.clauses_for(pat.pred, pat.arity):
            cur = dom.aunify(canon, pattern_abs, clause.head, dom.top(clause.vars), self.renamer)
            if points is not None:
                self._note(points, (clause.id, 0), cur)
            for i, lit in enumerate(clause.body, start=1):
                if isinstance(lit, UserCall):
                    callee = self.pattern_for(lit.atom, cur)
                    self.callers.setdefault(callee, set()).add(pat)
                    self.ensure(callee)
                    callee_canon = _canon_atom(callee.pred, callee.arity)
                    cur = dom.aunify(callee_canon, self.memo[callee], lit.atom, cur, self.renamer)
                else:
                    cur = builtin_transfer(lit, cur, dom)
                if points is not None:
                    self._note(points, (clause.id, i), cur)
            out = dom.lub(out, dom.aunify(clause.head, cur, canon, pattern_abs, self.renamer))
        return out

    def _entry_abs(self, pat: CallPattern):
        names = _canon_names(pat.arity)
        if self.dom.name == "mono":
            return MonoAbs(dict(zip(names, pat.entry)))
        return PolyAbs(dict(zip(names, pat.entry)))

    def _note(self, points, key, cur):
        prev = points.get(key)
        points[key] = cur if prev is None else self.dom.lub(prev, cur)

    def annotate(self) -> dict:
        """One more evaluation pass, at the fixpoint, to collect annotations."""
        points: dict = {}
        for pat in list(self.memo):
            out = self.eval_pattern(pat, points=points)
            if not self.dom.leq(out, self.memo[pat]):
                raise NonTermination("memo table not stable at annotation time")
        return points


def analysis_input(program: Program, dom) -> Any:
    """Build the goal's input abstraction from the program directive."""
    d = program.directive
    values = {v: dom.input_value(p) for v, p in d.bindings}
    if dom.name == "mono":
        return MonoAbs(values)
    return PolyAbs(values)


def analyze_program(program: Program, dom, **kw) -> AnalysisResult:
    """Analyze a program as instructed by its directive."""
    in_abs = analysis_input(program, dom)
    return analyze(program, program.directive.goal, in_abs, dom, **kw)


def instantiate_result(res: AnalysisResult, kappa: Assignment) -> AnalysisResult:
    """Collapse a parameter-carrying result under a concrete assignment.

    Patterns whose instantiated entries coincide are merged by lub, matching
    what a two-point run on the instantiated input would have memoized.
    """
    if res.domain_name != "poly":
        raise DomainMismatch("only a parameter-carrying result can be instantiated")
    memo: dict[CallPattern, MonoAbs] = {}
    for pat, out in res.memo.items():
        key = CallPattern(
            pat.pred, pat.arity, tuple(pm_instantiate(v, kappa) for v in pat.entry)
        )
        inst = pabs_instantiate(out, kappa)
        memo[key] = inst if key not in memo else mabs_lub(memo[key], inst)
    return AnalysisResult(
        domain_name="mono",
        goal=res.goal,
        params=(),
        in_abs=pabs_instantiate(res.in_abs, kappa),
        goal_output=pabs_instantiate(res.goal_output, kappa),
        memo=memo,
        points={pt: pabs_instantiate(a, kappa) for pt, a in res.points.items()},
        iterations=res.iterations,
    )
