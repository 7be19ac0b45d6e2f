"""Substitutions in idempotent solved form, most general unification, renaming.

Unification failure is the distinguished value FAIL, never an exception, and
it is absorbing under composition.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .syntax import Atom, Struct, Term, Var, rename_vars, vars_of


class _Fail:
    __slots__ = ()

    def __repr__(self):
        return "fail"

    def __bool__(self):
        return False


FAIL = _Fail()


class Substitution:
    """A finite map from variable names to terms, kept in solved form.

    Solved form means no domain variable occurs in any range term, which is
    exactly idempotence: applying the substitution twice equals applying it
    once.  Identity bindings are dropped on construction; violations raise.
    Binding insertion order is preserved and drives the EqSet view.
    """

    __slots__ = ("_map",)

    def __init__(self, bindings=()):
        m: dict[str, Term] = {}
        for x, t in dict(bindings).items():
            if isinstance(t, Var) and t.name == x:
                continue
            m[x] = t
        dom = set(m)
        for t in m.values():
            hit = dom & vars_of(t)
            if hit:
                raise ValueError(f"not in solved form: {sorted(hit)} bound and in a range term")
        self._map = m

    # -- basic views

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(self._map)

    @property
    def range_vars(self) -> frozenset[str]:
        out: set[str] = set()
        for t in self._map.values():
            out |= vars_of(t)
        return frozenset(out)

    def items(self):
        return self._map.items()

    def get(self, name: str) -> Term:
        """The binding of a variable; unbound variables map to themselves."""
        return self._map.get(name, Var(name))

    def is_empty(self) -> bool:
        return not self._map

    def __len__(self):
        return len(self._map)

    def __eq__(self, other):
        if not isinstance(other, Substitution):
            return NotImplemented
        return self._map == other._map

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def __repr__(self):
        from .syntax import render

        inner = ", ".join(f"{x} -> {render(t)}" for x, t in self._map.items())
        return "{" + inner + "}"

    # -- operations

    def apply(self, entity):
        """Apply to a term or atom."""
        if isinstance(entity, Var):
            return self._map.get(entity.name, entity)
        if isinstance(entity, Struct):
            return Struct(entity.functor, tuple(self.apply(a) for a in entity.args))
        if isinstance(entity, Atom):
            return Atom(entity.pred, tuple(self.apply(a) for a in entity.args))
        raise TypeError(f"cannot apply a substitution to {type(entity).__name__}")

    def restrict(self, names) -> "Substitution":
        keep = set(names)
        return Substitution({x: t for x, t in self._map.items() if x in keep})

    def rename_all(self, mapping: dict) -> "Substitution":
        """Rename variables on both sides of every binding."""
        return Substitution(
            {mapping.get(x, x): rename_vars(t, mapping) for x, t in self._map.items()}
        )


def empty() -> Substitution:
    return Substitution()


def compose(outer, inner):
    """compose(s, t) applies t first: apply(compose(s, t), e) = apply(s, apply(t, e)).

    FAIL is absorbing on either side.
    """
    if outer is FAIL or inner is FAIL:
        return FAIL
    out: dict[str, Term] = {}
    for x, t in inner.items():
        out[x] = outer.apply(t)
    for x, t in outer.items():
        if x not in out:
            out[x] = t
    return Substitution(out)


def apply(sub: Substitution, entity):
    return sub.apply(entity)


def restrict(obj, names):
    """Restrict a substitution or abstraction to the given variable names."""
    return obj.restrict(names)


# --------------------------------------------------------------------------
# most general unification

def _occurs(name: str, term: Term) -> bool:
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            if t.name == name:
                return True
        else:
            stack.extend(t.args)
    return False


def _solve(pairs):
    """Unify a list of term pairs; returns a solved-form dict or FAIL.

    Pairs are processed depth-first left-to-right so that binding creation
    order follows the source order of the disagreements.  When both sides of
    a pair are variables the right-hand one is bound to the left-hand one.
    """
    theta: dict[str, Term] = {}

    def chase(t: Term) -> Term:
        if isinstance(t, Var):
            b = theta.get(t.name)
            if b is None:
                return t
            return b
        if not t.args:
            return t
        return Struct(t.functor, tuple(chase(a) for a in t.args))

    def bind(name: str, term: Term):
        one = {name: term}
        for x in list(theta):
            theta[x] = rewrite(theta[x], one)
        theta[name] = term

    def rewrite(t: Term, one: dict) -> Term:
        if isinstance(t, Var):
            return one.get(t.name, t)
        if not t.args:
            return t
        return Struct(t.functor, tuple(rewrite(a, one) for a in t.args))

    queue = deque(pairs)
    while queue:
        s, t = queue.popleft()
        s = chase(s)
        t = chase(t)
        if s == t:
            continue
        if isinstance(t, Var):
            if _occurs(t.name, s):
                return FAIL
            bind(t.name, s)
            continue
        if isinstance(s, Var):
            if _occurs(s.name, t):
                return FAIL
            bind(s.name, t)
            continue
        if s.functor != t.functor or len(s.args) != len(t.args):
            return FAIL
        queue.extendleft(reversed(list(zip(s.args, t.args))))
    return theta


def mgu(t1, t2):
    """Most general unifier of two terms or two atoms, with occurs check.

    Returns a Substitution in solved form, or FAIL.
    """
    if isinstance(t1, Atom) != isinstance(t2, Atom):
        raise TypeError("cannot unify an atom with a term")
    if isinstance(t1, Atom):
        if t1.key != t2.key:
            return FAIL
        pairs = list(zip(t1.args, t2.args))
    else:
        pairs = [(t1, t2)]
    solved = _solve(pairs)
    if solved is FAIL:
        return FAIL
    return Substitution(solved)


def mgu_pairs(pairs):
    """Unify a whole list of (left, right) term pairs at once."""
    solved = _solve(list(pairs))
    if solved is FAIL:
        return FAIL
    return Substitution(solved)


# --------------------------------------------------------------------------
# solved-form equation view

@dataclass(frozen=True)
class EqSet:
    """A substitution read as equations X = t, in binding creation order."""

    equations: tuple = ()

    def __post_init__(self):
        dom = {x for x, _ in self.equations}
        if len(dom) != len(self.equations):
            raise ValueError("duplicate left-hand side")
        for _, t in self.equations:
            hit = dom & vars_of(t)
            if hit:
                raise ValueError(f"not in solved form: {sorted(hit)}")

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(x for x, _ in self.equations)

    @property
    def range_vars(self) -> frozenset[str]:
        out: set[str] = set()
        for _, t in self.equations:
            out |= vars_of(t)
        return frozenset(out)

    @property
    def variables(self) -> frozenset[str]:
        return self.domain | self.range_vars

    def __iter__(self):
        return iter(self.equations)

    def __len__(self):
        return len(self.equations)


def eq_of(sub):
    """Equation view of a substitution; FAIL passes through."""
    if sub is FAIL:
        return FAIL
    return EqSet(tuple(sub.items()))


# --------------------------------------------------------------------------
# renaming apart

class Renamer:
    """Produces variable renamings whose images can never collide.

    Emitted names have the shape `name#round`.  '#' cannot occur in a parsed
    variable name and the round counter never repeats, so fresh names are
    disjoint from every program variable and every earlier emission.
    """

    def __init__(self):
        self._round = 0

    def renaming(self, names) -> dict[str, str]:
        n = self._round
        self._round += 1
        return {x: f"{x}#{n}" for x in names}


def rename(renamer: Renamer, entity):
    """Rename an entity apart with a fresh renaming round.

    Works on terms and atoms directly; anything carrying a .scope and a
    .rename method (abstractions) goes through those.
    """
    if isinstance(entity, (Var, Struct, Atom)):
        mapping = renamer.renaming(sorted(vars_of(entity)))
        return rename_vars(entity, mapping)
    mapping = renamer.renaming(sorted(entity.scope))
    return entity.rename(mapping)
