"""Dependencies between variables read off a parameter-carrying result.

An abstraction implies "if these variables are ground then those are"
whenever the join of the consequents' modes is covered by the join of the
antecedents' modes.  Reported implications are minimized: one consequent
each, no redundant antecedents.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import BudgetExceeded, ScopeMismatch
from .poly_domain import PM_INF, PolyAbs, pm_leq, pm_lub

MAX_DEPS_SCOPE = 10


@dataclass(frozen=True)
class Implication:
    antecedents: tuple[str, ...]
    consequents: tuple[str, ...]
    at: object = None  # None names the goal itself

    def render(self) -> str:
        where = "goal" if self.at is None else f"clause {self.at[0]}, point {self.at[1]}"
        return f"{', '.join(self.antecedents)} -> {', '.join(self.consequents)} @ {where}"


def implies(abs_: PolyAbs, ante, cons) -> bool:
    """True when groundness of every antecedent variable forces groundness
    of every consequent variable, under every parameter assignment."""
    ante, cons = frozenset(ante), frozenset(cons)
    if not ante or not cons:
        raise ValueError("antecedents and consequents must be nonempty")
    if ante & cons:
        raise ValueError("antecedents and consequents must be disjoint")
    missing = (ante | cons) - abs_.scope
    if missing:
        raise ScopeMismatch(f"variables not in scope: {sorted(missing)}")
    lhs = PM_INF
    for y in sorted(cons):
        lhs = pm_lub(lhs, abs_[y])
    rhs = PM_INF
    for x in sorted(ante):
        rhs = pm_lub(rhs, abs_[x])
    return pm_leq(lhs, rhs)


def minimal_implications(abs_: PolyAbs, at=None) -> list[Implication]:
    """All implications with a single consequent and a minimal nonempty
    antecedent set, in a deterministic order."""
    scope = abs_.scope
    if len(scope) > MAX_DEPS_SCOPE:
        raise BudgetExceeded(f"scope of {len(scope)} exceeds the cap of {MAX_DEPS_SCOPE}")
    order = sorted(scope)
    out = []
    for cons in order:
        others = [x for x in order if x != cons]
        found: list[tuple[str, ...]] = []
        for size in range(1, len(others) + 1):
            for ante in combinations(others, size):
                if any(set(prev) <= set(ante) for prev in found):
                    continue
                if implies(abs_, ante, (cons,)):
                    found.append(ante)
        out.extend(Implication(ante, (cons,), at) for ante in found)
    return out
