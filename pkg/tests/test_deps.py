import random

import pytest

from polyground.deps import Implication, implies, minimal_implications
from polyground.engine import PolyDomain, analyze_program
from polyground.errors import BudgetExceeded, ScopeMismatch
from polyground.mono_domain import Mode
from polyground.oracle import random_polyabs
from polyground.poly_domain import PM_INF, PM_SUP, Assignment, PMode, PolyAbs, pm_instantiate


def pm(*sets):
    return PMode([list(s) for s in sets])


def test_permsort_goal_dependency(load_corpus):
    prog = load_corpus("permsort")
    res = analyze_program(prog, PolyDomain(prog.directive.params))
    assert minimal_implications(res.goal_output) == [Implication(("Xs",), ("Ys",))]
    assert implies(res.goal_output, ("Xs",), ("Ys",))
    assert not implies(res.goal_output, ("Ys",), ("Xs",))


def test_render_formats():
    assert Implication(("Xs",), ("Ys",)).render() == "Xs -> Ys @ goal"
    assert Implication(("A", "B"), ("C",), at=(1, 2)).render() == "A, B -> C @ clause 1, point 2"


def test_always_ground_variables_depend_on_anything():
    a = PolyAbs({"X": PM_INF, "Y": PM_INF})
    assert set(minimal_implications(a)) == {
        Implication(("Y",), ("X",)),
        Implication(("X",), ("Y",)),
    }


def test_independent_parameters_yield_nothing():
    a = PolyAbs({"X": pm(("a",)), "Y": pm(("b",))})
    assert minimal_implications(a) == []


def test_joint_antecedents_are_found_and_minimal():
    a = PolyAbs({"X": pm(("a",)), "Y": pm(("b",)), "Z": pm(("a", "b"))})
    out = minimal_implications(a)
    # Z is ground when either input parameter is, so each input alone forces it
    assert Implication(("X",), ("Z",)) in out
    assert Implication(("Y",), ("Z",)) in out
    assert Implication(("X", "Y"), ("Z",)) not in out
    assert all(imp.consequents != ("X",) for imp in out)


def test_implies_matches_exhaustive_instantiation():
    rng = random.Random(20)
    params = ("a", "b")
    scope = ("X", "Y", "Z")
    for _ in range(60):
        a = random_polyabs(rng, scope, params)
        for ante, cons in [
            (("X",), ("Y",)),
            (("Y",), ("X",)),
            (("X", "Y"), ("Z",)),
            (("Z",), ("X", "Y")),
        ]:
            expected = all(
                any(pm_instantiate(a[x], kappa) is Mode.U for x in ante)
                or all(pm_instantiate(a[y], kappa) is Mode.G for y in cons)
                for kappa in Assignment.enumerate(params)
            )
            assert implies(a, ante, cons) == expected, (a, ante, cons)


def test_argument_validation():
    a = PolyAbs({"X": PM_SUP, "Y": PM_SUP})
    with pytest.raises(ValueError):
        implies(a, (), ("X",))
    with pytest.raises(ValueError):
        implies(a, ("X",), ("X", "Y"))
    with pytest.raises(ScopeMismatch):
        implies(a, ("W",), ("X",))


def test_scope_budget():
    wide = PolyAbs({f"V{i}": PM_SUP for i in range(11)})
    with pytest.raises(BudgetExceeded):
        minimal_implications(wide)
