"""The parameter-carrying groundness domain.

A description is a canonical antichain of parameter sets, read as a
disjunction of conjunctions: under an assignment of g/u to the parameters,
the described variable is ground when every member set contains at least one
parameter assigned g.  The empty collection is the infimum (ground no matter
what); the collection holding just the empty set is the supremum (never
known ground).

Canonical form keeps only the inclusion-minimal sets, so structural equality
decides semantic equivalence.
"""

from __future__ import annotations

from itertools import product

from .errors import ScopeMismatch, ScopeOverlap, UnknownParam
from .mono_domain import Mode, MonoAbs
from .syntax import vars_of
from .unify import FAIL, EqSet, Renamer, eq_of, mgu, rename_vars


class PMode:
    """A canonical antichain of parameter sets."""

    __slots__ = ("_sets",)

    def __init__(self, sets=()):
        folded = {frozenset(s) for s in sets}
        self._sets = frozenset(s for s in folded if not any(t < s for t in folded))

    @property
    def sets(self) -> frozenset:
        return self._sets

    @property
    def params(self) -> frozenset[str]:
        out: set[str] = set()
        for s in self._sets:
            out |= s
        return frozenset(out)

    def __eq__(self, other):
        if not isinstance(other, PMode):
            return NotImplemented
        return self._sets == other._sets

    def __hash__(self):
        return hash(self._sets)

    def __repr__(self):
        return render_pmode(self)

    def sorted_sets(self) -> list[tuple[str, ...]]:
        return sorted(tuple(sorted(s)) for s in self._sets)


PM_INF = PMode()  # ground whatever the parameters mean
PM_SUP = PMode([()])  # never known ground


def pm_canon(raw, params=None) -> PMode:
    """Canonicalize a collection of parameter sets.

    When `params` is given, every mentioned name must belong to it.
    Idempotent: canonicalizing a PMode's sets returns an equal PMode.
    """
    groups = [frozenset(s) for s in raw]
    if params is not None:
        declared = frozenset(params)
        for s in groups:
            bad = s - declared
            if bad:
                raise UnknownParam(f"undeclared parameter(s): {', '.join(sorted(bad))}")
    return PMode(groups)


def pm_leq(a: PMode, b: PMode) -> bool:
    """Pointwise-for-all-assignments order on canonical antichains."""
    return all(any(t <= s for t in b.sets) for s in a.sets)


def pm_lub(a: PMode, b: PMode) -> PMode:
    return PMode(a.sets | b.sets)


def pm_glb(a: PMode, b: PMode) -> PMode:
    return PMode(s | t for s in a.sets for t in b.sets)


def pm_instantiate(s: PMode, kappa: "Assignment") -> Mode:
    """Collapse a description under a concrete parameter assignment."""
    for group in s.sets:
        if not any(kappa[p] is Mode.G for p in group):
            return Mode.U
    return Mode.G


def render_pmode(s: PMode) -> str:
    return "[" + ",".join("[" + ",".join(g) + "]" for g in s.sorted_sets()) + "]"


def all_pmodes(params) -> list[PMode]:
    """Every canonical description over the given parameters.

    Exponential in 2^|params|; meant for exhaustive law checking with at
    most three parameters.
    """
    params = tuple(params)
    if len(params) > 3:
        raise ValueError("exhaustive enumeration is limited to 3 parameters")
    subsets = []
    for mask in range(2 ** len(params)):
        subsets.append(frozenset(p for i, p in enumerate(params) if mask >> i & 1))
    seen = set()
    out = []
    for mask in range(2 ** len(subsets)):
        collection = [s for i, s in enumerate(subsets) if mask >> i & 1]
        pm = PMode(collection)
        if pm not in seen:
            seen.add(pm)
            out.append(pm)
    return sorted(out, key=lambda p: (len(p.sets), p.sorted_sets()))


class Assignment:
    """A total valuation of the declared parameters by g/u."""

    __slots__ = ("_map",)

    def __init__(self, mapping):
        m = dict(mapping)
        for p, v in m.items():
            if not isinstance(v, Mode):
                raise TypeError(f"{p}: expected a Mode, got {v!r}")
        self._map = m

    @property
    def params(self) -> frozenset[str]:
        return frozenset(self._map)

    def __getitem__(self, name: str) -> Mode:
        try:
            return self._map[name]
        except KeyError:
            raise UnknownParam(f"no assignment for parameter {name!r}") from None

    def items(self):
        return self._map.items()

    def __eq__(self, other):
        if not isinstance(other, Assignment):
            return NotImplemented
        return self._map == other._map

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def __repr__(self):
        inner = ", ".join(f"{p}={v}" for p, v in sorted(self._map.items()))
        return "{" + inner + "}"

    @staticmethod
    def enumerate(params) -> list["Assignment"]:
        """All 2^n assignments, in a deterministic order."""
        params = tuple(params)
        out = []
        for values in product((Mode.G, Mode.U), repeat=len(params)):
            out.append(Assignment(dict(zip(params, values))))
        return out


class PolyAbs:
    """An abstract substitution with parameter-carrying descriptions."""

    __slots__ = ("_descr",)

    def __init__(self, descr):
        d = dict(descr)
        for x, v in d.items():
            if not isinstance(v, PMode):
                raise TypeError(f"{x}: expected a PMode, got {v!r}")
        self._descr = d

    @classmethod
    def const(cls, scope, value: PMode) -> "PolyAbs":
        return cls(dict.fromkeys(scope, value))

    @property
    def scope(self) -> frozenset[str]:
        return frozenset(self._descr)

    def __getitem__(self, name: str) -> PMode:
        return self._descr[name]

    def items(self):
        return self._descr.items()

    def __eq__(self, other):
        if not isinstance(other, PolyAbs):
            return NotImplemented
        return self._descr == other._descr

    def __hash__(self):
        return hash(frozenset(self._descr.items()))

    def __repr__(self):
        return render_pabs(self)

    def union(self, other: "PolyAbs") -> "PolyAbs":
        overlap = self.scope & other.scope
        if overlap:
            raise ScopeOverlap(f"scopes share {sorted(overlap)}")
        return PolyAbs({**self._descr, **other._descr})

    def restrict(self, names) -> "PolyAbs":
        keep = set(names)
        return PolyAbs({x: s for x, s in self._descr.items() if x in keep})

    def rename(self, mapping: dict) -> "PolyAbs":
        return PolyAbs({mapping.get(x, x): s for x, s in self._descr.items()})

    def set_all(self, names, value: PMode) -> "PolyAbs":
        out = dict(self._descr)
        for x in names:
            out[x] = value
        return PolyAbs(out)


def _same_scope(a: PolyAbs, b: PolyAbs):
    if a.scope != b.scope:
        raise ScopeMismatch(f"scopes differ: {sorted(a.scope)} vs {sorted(b.scope)}")


def pabs_leq(a: PolyAbs, b: PolyAbs) -> bool:
    _same_scope(a, b)
    return all(pm_leq(s, b[x]) for x, s in a.items())


def pabs_lub(a: PolyAbs, b: PolyAbs) -> PolyAbs:
    _same_scope(a, b)
    return PolyAbs({x: pm_lub(s, b[x]) for x, s in a.items()})


def pabs_glb(a: PolyAbs, b: PolyAbs) -> PolyAbs:
    _same_scope(a, b)
    return PolyAbs({x: pm_glb(s, b[x]) for x, s in a.items()})


def pabs_instantiate(a: PolyAbs, kappa: Assignment) -> MonoAbs:
    return MonoAbs({x: pm_instantiate(s, kappa) for x, s in a.items()})


def render_pabs(a: PolyAbs, order=None) -> str:
    names = list(order) if order is not None else sorted(a.scope)
    inner = ", ".join(f"{x}/{render_pmode(a[x])}" for x in names)
    return "{" + inner + "}"


# --------------------------------------------------------------------------
# abstract unification (structural mirror of the two-point version)

def _check_covers(abs_, eqs: EqSet):
    missing = eqs.variables - abs_.scope
    if missing:
        raise ScopeMismatch(f"equations mention {sorted(missing)} outside the scope")


def pdown(eqs: EqSet, zeta: PolyAbs) -> PolyAbs:
    """Downward propagation; glb becomes the pairwise-union combination."""
    _check_covers(zeta, eqs)
    lowered: dict[str, PMode] = {}
    for lhs, rhs in eqs:
        s = zeta[lhs]
        for y in vars_of(rhs):
            lowered[y] = pm_glb(lowered.get(y, PM_SUP), s)
    return PolyAbs(
        {x: (pm_glb(s, lowered[x]) if x in lowered else s) for x, s in zeta.items()}
    )


def pup(eqs: EqSet, eta: PolyAbs) -> PolyAbs:
    """Upward propagation; lub becomes collection union."""
    _check_covers(eta, eqs)
    out = {x: s for x, s in eta.items()}
    for lhs, rhs in eqs:
        s = PM_INF
        for y in vars_of(rhs):
            s = pm_lub(s, eta[y])
        out[lhs] = pm_glb(eta[lhs], s)
    return PolyAbs(out)


def punify(a, theta: PolyAbs, b, sigma: PolyAbs, renamer: Renamer) -> PolyAbs:
    """Parameter-carrying abstract unification; mirrors the two-point one.

    The failure branch returns the all-infimum abstraction over sigma's
    scope (every description the empty collection).
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
        return PolyAbs.const(sigma.scope, PM_INF)
    e0 = eq_of(res)
    return pup(e0, pdown(e0, combined)).restrict(sigma.scope)
