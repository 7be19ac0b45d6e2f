"""Brute-force concrete semantics at desk scale.

Everything here exists to machine-check the analyzer rather than to run
programs: bounded Herbrand term enumeration, exhaustive substitution sets,
the collecting-semantics unification operator, a bounded concrete
interpreter that records substitutions at program points, and the seeded
trial suites behind the `check` command.

Guards are hard errors on purpose: a truncated oracle proves nothing.
"""

from __future__ import annotations

import random
import time
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import BudgetExceeded
from .mono_domain import Mode, MonoAbs, gamma_member, munify
from .poly_domain import (
    Assignment,
    PMode,
    PolyAbs,
    pabs_instantiate,
    punify,
    render_pabs,
    render_pmode,
)
from .syntax import Atom, Builtin, Struct, UserCall, Var, is_ground, render, rename_vars, vars_of
from .unify import FAIL, Renamer, Substitution, compose, mgu, mgu_pairs

MAX_SCOPE = 4
MAX_TERMS = 200


@dataclass(frozen=True)
class Universe:
    """A bounded Herbrand universe: signature, maximum term depth, and the
    number of fresh pool variables available as nonground witnesses."""

    signature: tuple  # ((functor, arity), ...)
    depth: int
    pool: int = 2

    def __post_init__(self):
        if not any(a == 0 for _, a in self.signature):
            raise ValueError("universe needs at least one constant")
        if self.depth < 1:
            raise ValueError("depth must be at least 1")

    @property
    def pool_names(self) -> tuple[str, ...]:
        return tuple(f"_p{i}" for i in range(1, self.pool + 1))


def default_universe() -> Universe:
    return Universe((("a", 0), ("f", 1), ("g", 2)), depth=2, pool=2)


@lru_cache(maxsize=None)
def universe_terms(u: Universe) -> tuple:
    """All terms of depth <= u.depth, pool variables included, in a stable order."""
    level: list = [Struct(f) for f, a in u.signature if a == 0]
    level += [Var(n) for n in u.pool_names]
    terms = set(level)
    for _ in range(u.depth - 1):
        prev = list(terms)
        for f, a in u.signature:
            if a == 0:
                continue
            for args in product(prev, repeat=a):
                terms.add(Struct(f, args))
    return tuple(sorted(terms, key=render))


def enumerate_subs(scope, u: Universe) -> tuple:
    """Every substitution mapping each scope variable to a universe term or
    leaving it unbound.  Deduplicated, deterministically ordered."""
    scope = sorted(scope)
    if len(scope) > MAX_SCOPE:
        raise BudgetExceeded(f"scope of {len(scope)} exceeds the cap of {MAX_SCOPE}")
    clash = set(scope) & set(u.pool_names)
    if clash:
        raise ValueError(f"scope collides with pool variables: {sorted(clash)}")
    terms = universe_terms(u)
    if len(terms) > MAX_TERMS:
        raise BudgetExceeded(f"{len(terms)} terms exceed the cap of {MAX_TERMS}")
    out = set()
    candidate_rows = [tuple(terms) + (Var(x),) for x in scope]
    for values in product(*candidate_rows):
        out.add(Substitution(dict(zip(scope, values))))
    return tuple(sorted(out, key=repr))


def gamma_filter(subs, a: MonoAbs) -> tuple:
    return tuple(s for s in subs if gamma_member(s, a))


def upsilon_filter(subs, a: PolyAbs, kappa: Assignment) -> tuple:
    return gamma_filter(subs, pabs_instantiate(a, kappa))


# --------------------------------------------------------------------------
# collecting-semantics unification

def cunify(a1, theta1s, a2, theta2s, renamer: Renamer | None = None) -> frozenset:
    """All successful concrete unifications of a1 (under each theta1, renamed
    apart) with a2 (under each theta2), composed onto theta2."""
    renamer = renamer or Renamer()
    out = set()
    rights = [(t2, t2.apply(a2)) for t2 in theta2s]
    for t1 in theta1s:
        m = renamer.renaming(sorted(vars_of(a1) | t1.domain | t1.range_vars))
        left = t1.rename_all(m).apply(rename_vars(a1, m))
        for t2, a2_inst in rights:
            res = mgu(left, a2_inst)
            if res is not FAIL:
                out.add(compose(res, t2))
    return frozenset(out)


def cunify_alt(a1, theta1s, a2, theta2s, renamer: Renamer | None = None) -> frozenset:
    """Independent second path: instantiate each atom fully first, then
    rename the finished left atom and unify.  Must agree with cunify."""
    renamer = renamer or Renamer()
    out = set()
    rights = [(t2, t2.apply(a2)) for t2 in theta2s]
    for t1 in theta1s:
        left_inst = t1.apply(a1)
        m = renamer.renaming(sorted(vars_of(left_inst)))
        left = rename_vars(left_inst, m)
        for t2, a2_inst in rights:
            res = mgu(left, a2_inst)
            if res is not FAIL:
                out.add(compose(res, t2))
    return frozenset(out)


def _ground_profile(sub: Substitution, scope) -> frozenset:
    return frozenset(x for x in scope if is_ground(sub.get(x)))


def check_mono_safety(a, theta: MonoAbs, b, sigma: MonoAbs, u: Universe) -> bool:
    """Exhaustively verify that the abstract unification covers the concrete one.

    Every successful concrete unification of described substitutions must
    satisfy the abstract result's description.
    """
    res = munify(a, theta, b, sigma, Renamer())
    t1s = gamma_filter(enumerate_subs(theta.scope, u), theta)
    t2s = gamma_filter(enumerate_subs(sigma.scope, u), sigma)
    need = frozenset(x for x in res.scope if res[x] is Mode.G)
    renamer = Renamer()
    rights = [(t2, t2.apply(b)) for t2 in t2s]
    for t1 in t1s:
        m = renamer.renaming(sorted(vars_of(a) | t1.domain | t1.range_vars))
        left = t1.rename_all(m).apply(rename_vars(a, m))
        for t2, b_inst in rights:
            w = mgu(left, b_inst)
            if w is FAIL:
                continue
            for x in need:
                if not is_ground(w.apply(t2.get(x))):
                    return False
    return True


def check_poly(a, theta: PolyAbs, b, sigma: PolyAbs, u: Universe, params) -> bool:
    """For every parameter assignment: the instantiated parameter-carrying
    result must equal the two-point result on instantiated inputs, and it
    must cover the concrete unifications of the correspondingly described
    substitutions.

    The concrete unifications are computed once and reused across
    assignments (only the filtering depends on the assignment).
    """
    pres = punify(a, theta, b, sigma, Renamer())
    scope1, scope2 = theta.scope, sigma.scope
    prof1 = [(s, _ground_profile(s, scope1)) for s in enumerate_subs(scope1, u)]
    prof2 = [(s, _ground_profile(s, scope2)) for s in enumerate_subs(scope2, u)]
    renamer = Renamer()
    pairs = []
    rights = [(t2, t2.apply(b)) for t2, _ in prof2]
    for i, (t1, _) in enumerate(prof1):
        m = renamer.renaming(sorted(vars_of(a) | t1.domain | t1.range_vars))
        left = t1.rename_all(m).apply(rename_vars(a, m))
        for j, (t2, b_inst) in enumerate(rights):
            w = mgu(left, b_inst)
            if w is not FAIL:
                pairs.append(
                    (i, j, frozenset(x for x in scope2 if is_ground(w.apply(t2.get(x)))))
                )
    for kappa in Assignment.enumerate(params):
        m_theta = pabs_instantiate(theta, kappa)
        m_sigma = pabs_instantiate(sigma, kappa)
        inst = pabs_instantiate(pres, kappa)
        if inst != munify(a, m_theta, b, m_sigma, Renamer()):
            return False
        g1 = frozenset(x for x in scope1 if m_theta[x] is Mode.G)
        g2 = frozenset(x for x in scope2 if m_sigma[x] is Mode.G)
        need = frozenset(x for x in scope2 if inst[x] is Mode.G)
        for i, j, ground_at in pairs:
            if g1 <= prof1[i][1] and g2 <= prof2[j][1] and not need <= ground_at:
                return False
    return True


# --------------------------------------------------------------------------
# bounded concrete interpreter

_IDENTITY_KINDS = {"lt", "gt", "le", "ge", "arith-eq", "arith-ne", "true"}


def sld_points(program, goal: Atom, theta0: Substitution, max_depth: int = 40):
    """Run the goal concretely, collecting the substitutions seen at every
    program point (restricted to the owning clause's variables).

    Follows the same discipline as procedure entry/exit in the analyzer:
    the caller's goal and substitution are renamed apart on entry, and the
    clause head and final body substitution are renamed apart on exit.
    Comparison built-ins are treated as always succeeding (matching the
    analyzer's identity transfer); `is` is rejected.

    Returns (points, outputs): per-point substitution sets and the set of
    output substitutions of the goal itself.
    """
    points: dict = defaultdict(set)
    renamer = Renamer()

    def solve(atom, theta, depth):
        if depth <= 0:
            raise BudgetExceeded("derivation depth cap hit; choose smaller inputs")
        for clause in program.clauses_for(*atom.key):
            m = renamer.renaming(sorted(vars_of(atom) | theta.domain | theta.range_vars))
            entry = list(zip(rename_vars(atom, m).args, clause.head.args))
            entry += [(Var(x), t) for x, t in theta.rename_all(m).items()]
            s = mgu_pairs(entry)
            if s is FAIL:
                continue
            cur = s.restrict(clause.vars)
            points[(clause.id, 0)].add(cur)
            for final in run_body(clause, 0, cur, depth):
                m2 = renamer.renaming(
                    sorted(vars_of(clause.head) | final.domain | final.range_vars)
                )
                exit_ = list(zip(rename_vars(clause.head, m2).args, atom.args))
                exit_ += [(Var(x), t) for x, t in final.rename_all(m2).items()]
                exit_ += [(Var(x), t) for x, t in theta.items()]
                s2 = mgu_pairs(exit_)
                if s2 is FAIL:
                    continue
                yield s2.restrict(vars_of(atom) | theta.domain)

    def run_body(clause, i, cur, depth):
        if i == len(clause.body):
            yield cur
            return
        lit = clause.body[i]
        if isinstance(lit, UserCall):
            for out in solve(lit.atom, cur, depth - 1):
                nxt = out.restrict(clause.vars)
                points[(clause.id, i + 1)].add(nxt)
                yield from run_body(clause, i + 1, nxt, depth)
            return
        if lit.kind == "unify-eq":
            w = mgu(cur.apply(lit.args[0]), cur.apply(lit.args[1]))
            if w is FAIL:
                return
            nxt = compose(w, cur).restrict(clause.vars)
        elif lit.kind in _IDENTITY_KINDS:
            nxt = cur
        elif lit.kind == "fail":
            return
        else:
            raise ValueError(f"cannot run {lit.kind} concretely")
        points[(clause.id, i + 1)].add(nxt)
        yield from run_body(clause, i + 1, nxt, depth)

    outputs = set(solve(goal, theta0, max_depth))
    return dict(points), frozenset(outputs)


# --------------------------------------------------------------------------
# seeded trial generators

def random_term(rng: random.Random, var_names, sig, max_depth: int):
    consts = [f for f, a in sig if a == 0]
    apps = [(f, a) for f, a in sig if a > 0]
    kinds = ["const"] + (["var"] * 2 if var_names else [])
    if max_depth > 1 and apps:
        kinds += ["app"] * 2
    kind = rng.choice(kinds)
    if kind == "var":
        return Var(rng.choice(var_names))
    if kind == "const":
        return Struct(rng.choice(consts))
    f, a = rng.choice(apps)
    return Struct(f, tuple(random_term(rng, var_names, sig, max_depth - 1) for _ in range(a)))


def random_atom(rng: random.Random, var_names, sig, max_depth: int, arity: int) -> Atom:
    return Atom("p", tuple(random_term(rng, var_names, sig, max_depth) for _ in range(arity)))


def random_monoabs(rng: random.Random, scope) -> MonoAbs:
    return MonoAbs({x: rng.choice((Mode.G, Mode.U)) for x in sorted(scope)})


def random_pmode(rng: random.Random, params) -> PMode:
    params = tuple(params)
    groups = []
    for _ in range(rng.randint(0, 3)):
        groups.append([p for p in params if rng.random() < 0.5])
    return PMode(groups)


def random_polyabs(rng: random.Random, scope, params) -> PolyAbs:
    return PolyAbs({x: random_pmode(rng, params) for x in sorted(scope)})


# --------------------------------------------------------------------------
# check suites

@dataclass
class SuiteResult:
    name: str
    trials: int
    failures: list
    elapsed: float

    @property
    def ok(self) -> bool:
        return not self.failures


_SIG = (("a", 0), ("f", 1), ("g", 2))
_PARAM_POOL = ("alpha", "beta", "gamma")


def _random_unify_inputs(rng: random.Random, max_vars: int):
    arity = rng.randint(1, 2)
    a = random_atom(rng, ("X", "Y", "Z")[: rng.randint(1, max_vars)], _SIG, 2, arity)
    b = random_atom(rng, ("X", "Y", "Z")[: rng.randint(1, max_vars)], _SIG, 2, arity)
    return a, b


def run_precision_trials(trials: int, seed: int) -> SuiteResult:
    """Instantiating the parameter-carrying unification must equal the
    two-point unification of the instantiated inputs, for every assignment."""
    rng = random.Random(seed)
    failures = []
    start = time.perf_counter()
    for trial in range(trials):
        a, b = _random_unify_inputs(rng, max_vars=3)
        params = _PARAM_POOL[: rng.randint(1, 3)]
        theta = random_polyabs(rng, vars_of(a), params)
        sigma = random_polyabs(rng, vars_of(b), params)
        pres = punify(a, theta, b, sigma, Renamer())
        for kappa in Assignment.enumerate(params):
            inst = pabs_instantiate(pres, kappa)
            mono = munify(
                a, pabs_instantiate(theta, kappa), b, pabs_instantiate(sigma, kappa), Renamer()
            )
            if inst != mono:
                failures.append(_describe_trial(trial, a, theta, b, sigma, kappa=kappa))
                break
    return SuiteResult("precision", trials, failures, time.perf_counter() - start)


def run_mono_safety_trials(trials: int, seed: int, u: Universe | None = None) -> SuiteResult:
    u = u or default_universe()
    rng = random.Random(seed)
    failures = []
    start = time.perf_counter()
    for trial in range(trials):
        a, b = _random_unify_inputs(rng, max_vars=2)
        theta = random_monoabs(rng, vars_of(a))
        sigma = random_monoabs(rng, vars_of(b))
        if not check_mono_safety(a, theta, b, sigma, u):
            failures.append(_describe_trial(trial, a, theta, b, sigma))
    return SuiteResult("mono-safety", trials, failures, time.perf_counter() - start)


def run_poly_safety_trials(
    trials: int, seed: int, u: Universe | None = None, max_params: int = 2
) -> SuiteResult:
    u = u or default_universe()
    rng = random.Random(seed)
    failures = []
    start = time.perf_counter()
    for trial in range(trials):
        a, b = _random_unify_inputs(rng, max_vars=2)
        params = _PARAM_POOL[: rng.randint(1, max_params)]
        theta = random_polyabs(rng, vars_of(a), params)
        sigma = random_polyabs(rng, vars_of(b), params)
        if not check_poly(a, theta, b, sigma, u, params):
            failures.append(_describe_trial(trial, a, theta, b, sigma))
    return SuiteResult("poly-safety", trials, failures, time.perf_counter() - start)


def _describe_trial(trial, a, theta, b, sigma, kappa=None) -> str:
    bits = [
        f"trial {trial}",
        f"a1={render(a)}",
        f"theta={theta!r}",
        f"a2={render(b)}",
        f"sigma={sigma!r}",
    ]
    if kappa is not None:
        bits.append(f"kappa={kappa!r}")
    return " ".join(bits)


def run_lattice_suite(max_params: int = 3) -> SuiteResult:
    """Exhaustive order/lattice/homomorphism laws over small parameter sets."""
    from .mono_domain import mode_glb, mode_leq, mode_lub
    from .poly_domain import all_pmodes, pm_canon, pm_glb, pm_instantiate, pm_leq, pm_lub

    failures = []
    checked = 0
    start = time.perf_counter()

    def fail(msg):
        failures.append(msg)

    for n in range(1, max_params + 1):
        params = _PARAM_POOL[:n]
        modes = all_pmodes(params)
        assignments = Assignment.enumerate(params)
        for s in modes:
            checked += 1
            if pm_canon(s.sets) != s or PMode(s.sets) != s:
                fail(f"canon not idempotent on {s!r}")
            if not pm_leq(s, s):
                fail(f"leq not reflexive on {s!r}")
        for s in modes:
            for t in modes:
                checked += 1
                if pm_leq(s, t) and pm_leq(t, s) and s != t:
                    fail(f"antisymmetry fails: {s!r} vs {t!r}")
                lub, glb = pm_lub(s, t), pm_glb(s, t)
                if lub != pm_lub(t, s) or glb != pm_glb(t, s):
                    fail(f"commutativity fails on {s!r}, {t!r}")
                if not (pm_leq(s, lub) and pm_leq(t, lub)):
                    fail(f"lub not an upper bound of {s!r}, {t!r}")
                if not (pm_leq(glb, s) and pm_leq(glb, t)):
                    fail(f"glb not a lower bound of {s!r}, {t!r}")
                if pm_lub(s, pm_glb(s, t)) != s or pm_glb(s, pm_lub(s, t)) != s:
                    fail(f"absorption fails on {s!r}, {t!r}")
                semantic = all(
                    mode_leq(pm_instantiate(s, k), pm_instantiate(t, k)) for k in assignments
                )
                if pm_leq(s, t) != semantic:
                    fail(f"order disagrees with instantiation on {s!r}, {t!r}")
                for k in assignments:
                    if pm_instantiate(lub, k) != mode_lub(
                        pm_instantiate(s, k), pm_instantiate(t, k)
                    ):
                        fail(f"lub homomorphism fails on {s!r}, {t!r} at {k!r}")
                    if pm_instantiate(glb, k) != mode_glb(
                        pm_instantiate(s, k), pm_instantiate(t, k)
                    ):
                        fail(f"glb homomorphism fails on {s!r}, {t!r} at {k!r}")
        for s in modes:
            for t in modes:
                for r in modes:
                    checked += 1
                    if pm_lub(pm_lub(s, t), r) != pm_lub(s, pm_lub(t, r)):
                        fail("lub associativity fails")
                    if pm_glb(pm_glb(s, t), r) != pm_glb(s, pm_glb(t, r)):
                        fail("glb associativity fails")
                    if pm_leq(s, t) and pm_leq(t, r) and not pm_leq(s, r):
                        fail("transitivity fails")
    return SuiteResult("lattice-laws", checked, failures, time.perf_counter() - start)
