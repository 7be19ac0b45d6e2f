"""The two-point groundness lattice and abstract unification over it.

A variable's description is `g` (definitely bound to a ground term) or `u`
(no information), with g below u.  Abstract substitutions map a finite scope
of variable names to modes, ordered pointwise.
"""

from __future__ import annotations

from enum import Enum

from .errors import ScopeMismatch, ScopeOverlap
from .syntax import is_ground, vars_of
from .unify import FAIL, EqSet, Renamer, Substitution, eq_of, mgu, rename_vars


class Mode(Enum):
    G = "g"
    U = "u"

    def __str__(self):
        return self.value

    def __repr__(self):
        return self.value


def mode_leq(a: Mode, b: Mode) -> bool:
    return a is Mode.G or b is Mode.U


def mode_lub(a: Mode, b: Mode) -> Mode:
    return Mode.U if Mode.U in (a, b) else Mode.G


def mode_glb(a: Mode, b: Mode) -> Mode:
    return Mode.G if Mode.G in (a, b) else Mode.U


class MonoAbs:
    """An abstract substitution: a mode for every variable in its scope."""

    __slots__ = ("_modes",)

    def __init__(self, modes):
        m = dict(modes)
        for x, v in m.items():
            if not isinstance(v, Mode):
                raise TypeError(f"{x}: expected a Mode, got {v!r}")
        self._modes = m

    @classmethod
    def const(cls, scope, mode: Mode) -> "MonoAbs":
        return cls(dict.fromkeys(scope, mode))

    @property
    def scope(self) -> frozenset[str]:
        return frozenset(self._modes)

    def __getitem__(self, name: str) -> Mode:
        return self._modes[name]

    def items(self):
        return self._modes.items()

    def __eq__(self, other):
        if not isinstance(other, MonoAbs):
            return NotImplemented
        return self._modes == other._modes

    def __hash__(self):
        return hash(frozenset(self._modes.items()))

    def __repr__(self):
        return render_mabs(self)

    def union(self, other: "MonoAbs") -> "MonoAbs":
        overlap = self.scope & other.scope
        if overlap:
            raise ScopeOverlap(f"scopes share {sorted(overlap)}")
        return MonoAbs({**self._modes, **other._modes})

    def restrict(self, names) -> "MonoAbs":
        keep = set(names)
        return MonoAbs({x: m for x, m in self._modes.items() if x in keep})

    def rename(self, mapping: dict) -> "MonoAbs":
        return MonoAbs({mapping.get(x, x): m for x, m in self._modes.items()})

    def set_all(self, names, mode: Mode) -> "MonoAbs":
        out = dict(self._modes)
        for x in names:
            out[x] = mode
        return MonoAbs(out)


def _same_scope(a: MonoAbs, b: MonoAbs):
    if a.scope != b.scope:
        raise ScopeMismatch(f"scopes differ: {sorted(a.scope)} vs {sorted(b.scope)}")


def mabs_leq(a: MonoAbs, b: MonoAbs) -> bool:
    _same_scope(a, b)
    return all(mode_leq(m, b[x]) for x, m in a.items())


def mabs_lub(a: MonoAbs, b: MonoAbs) -> MonoAbs:
    _same_scope(a, b)
    return MonoAbs({x: mode_lub(m, b[x]) for x, m in a.items()})


def mabs_glb(a: MonoAbs, b: MonoAbs) -> MonoAbs:
    _same_scope(a, b)
    return MonoAbs({x: mode_glb(m, b[x]) for x, m in a.items()})


def render_mabs(a: MonoAbs, order=None) -> str:
    names = list(order) if order is not None else sorted(a.scope)
    inner = ", ".join(f"{x}/{a[x]}" for x in names)
    return "{" + inner + "}"


# --------------------------------------------------------------------------
# abstract unification

def _check_covers(abs_, eqs: EqSet):
    missing = eqs.variables - abs_.scope
    if missing:
        raise ScopeMismatch(f"equations mention {sorted(missing)} outside the scope")


def mdown(eqs: EqSet, zeta: MonoAbs) -> MonoAbs:
    """Propagate groundness downward through solved equations.

    A variable occurring in the bound term of an equation X = t inherits
    (by glb) the mode of X: if X is ground, everything inside t is.
    """
    _check_covers(zeta, eqs)
    lowered: dict[str, Mode] = {}
    for lhs, rhs in eqs:
        m = zeta[lhs]
        for y in vars_of(rhs):
            lowered[y] = mode_glb(lowered.get(y, Mode.U), m)
    return MonoAbs(
        {x: (mode_glb(m, lowered[x]) if x in lowered else m) for x, m in zeta.items()}
    )


def mup(eqs: EqSet, eta: MonoAbs) -> MonoAbs:
    """Propagate groundness upward into the bound variables.

    A bound variable X = t becomes ground exactly when every variable of t
    is ground, so its new mode meets the lub of the modes inside t (lub over
    the empty set is g: a variable equated to a ground term is ground).
    """
    _check_covers(eta, eqs)
    out = {x: m for x, m in eta.items()}
    for lhs, rhs in eqs:
        m = Mode.G
        for y in vars_of(rhs):
            m = mode_lub(m, eta[y])
        out[lhs] = mode_glb(eta[lhs], m)
    return MonoAbs(out)


def munify(a, theta: MonoAbs, b, sigma: MonoAbs, renamer: Renamer) -> MonoAbs:
    """Abstract unification of goal `a` under theta with goal `b` under sigma.

    `a` and theta are renamed apart, the two scopes are combined, and the
    most general unifier of the renamed `a` with `b` drives a downward then
    upward propagation pass.  The result is scoped over sigma's scope.  A
    failing unification yields the all-g infimum.
    """
    if not vars_of(a) <= theta.scope:
        raise ScopeMismatch("theta does not cover the variables of its atom")
    if not vars_of(b) <= sigma.scope:
        raise ScopeMismatch("sigma does not cover the variables of its atom")
    mapping = renamer.renaming(sorted(theta.scope))
    a1 = rename_vars(a, mapping)
    combined = theta.rename(mapping).union(sigma)
    res = mgu(a1, b)
    if res is FAIL:
        return MonoAbs.const(sigma.scope, Mode.G)
    e0 = eq_of(res)
    return mup(e0, mdown(e0, combined)).restrict(sigma.scope)


def gamma_member(theta: Substitution, a: MonoAbs) -> bool:
    """Does the concrete substitution satisfy the description?

    Variables mapped to g must be bound to ground terms; u constrains
    nothing.  Unbound variables are treated as mapping to themselves.
    """
    for x, m in a.items():
        if m is Mode.G and not is_ground(theta.get(x)):
            return False
    return True
