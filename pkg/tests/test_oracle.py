import pytest

from polyground.errors import BudgetExceeded
from polyground.mono_domain import Mode, MonoAbs, mabs_glb, mabs_lub
from polyground.oracle import (
    Universe,
    check_mono_safety,
    check_poly,
    cunify,
    cunify_alt,
    default_universe,
    enumerate_subs,
    gamma_filter,
    run_lattice_suite,
    run_mono_safety_trials,
    run_poly_safety_trials,
    run_precision_trials,
    sld_points,
    universe_terms,
    upsilon_filter,
)
from polyground.poly_domain import PM_SUP, Assignment, PMode, PolyAbs, pabs_glb, pabs_lub
from polyground.syntax import Struct, Var, parse_atom, parse_program, parse_term
from polyground.unify import Substitution

G, U = Mode.G, Mode.U
SMALL = Universe((("a", 0), ("f", 1)), depth=2, pool=1)
TINY = Universe((("a", 0),), depth=1, pool=1)


def pm(*sets):
    return PMode([list(s) for s in sets])


def test_universe_validation():
    with pytest.raises(ValueError):
        Universe((("f", 1),), depth=1)
    with pytest.raises(ValueError):
        Universe((("a", 0),), depth=0)
    assert default_universe().pool_names == ("_p1", "_p2")


def test_universe_terms_counts_and_order():
    assert universe_terms(TINY) == (Var("_p1"), Struct("a"))
    small = universe_terms(SMALL)
    assert len(small) == 4  # a, _p1, f(a), f(_p1)
    assert small == universe_terms(SMALL)  # cached, stable


def test_enumerate_subs_counts():
    assert len(enumerate_subs(("X",), TINY)) == 3  # two terms or unbound
    assert len(enumerate_subs(("X", "Y"), SMALL)) == 25
    assert enumerate_subs((), SMALL) == (Substitution({}),)


def test_enumerate_subs_guards():
    with pytest.raises(BudgetExceeded):
        enumerate_subs(("A", "B", "C", "D", "E"), TINY)
    with pytest.raises(ValueError):
        enumerate_subs(("X", "_p1"), TINY)


def test_cunify_golden():
    a = parse_atom("p(X)")
    bound = Substitution({"X": parse_term("a")})
    out = cunify(a, [bound], a, [Substitution({})])
    assert out == frozenset({bound})
    assert cunify(parse_atom("p(a)"), [Substitution({})], parse_atom("p(b)"),
                  [Substitution({})]) == frozenset()
    assert cunify(a, [], a, [Substitution({})]) == frozenset()


def test_cunify_agrees_with_the_alternate_path():
    a = parse_atom("p(f(X), Y)")
    b = parse_atom("p(Y, f(X))")
    lefts = enumerate_subs(("X", "Y"), TINY)
    rights = enumerate_subs(("X", "Y"), TINY)
    assert cunify(a, lefts, b, rights) == cunify_alt(a, lefts, b, rights)


def test_two_point_unification_is_safe_on_the_worked_example():
    a = parse_atom("g(X, f(Y, f(Z, Z)), Y)")
    b = parse_atom("g(f(X, Y), Z, X)")
    theta = MonoAbs({"X": G, "Y": G, "Z": G})
    sigma = MonoAbs({"X": U, "Y": G, "Z": G})
    assert check_mono_safety(a, theta, b, sigma, SMALL)


def test_parameter_unification_is_safe_and_precise_on_the_worked_example():
    a = parse_atom("g(X, f(Y, f(Z, Z)), Y)")
    b = parse_atom("g(f(X, Y), Z, X)")
    theta = PolyAbs({"X": pm(("a1", "a2")), "Y": pm(("a1", "a3")), "Z": pm(("a2", "a3"))})
    sigma = PolyAbs({"X": pm(("a1",), ("a2",)), "Y": pm(("a2", "a3")), "Z": PM_SUP})
    assert check_poly(a, theta, b, sigma, SMALL, ("a1", "a2", "a3"))


def test_parameter_checks_cover_the_degenerate_cases():
    a = parse_atom("p(X)")
    assert check_poly(a, PolyAbs({"X": PM_SUP}), a, PolyAbs({"X": PM_SUP}), TINY, ())
    assert check_poly(a, PolyAbs({"X": PM_SUP}), a, PolyAbs({"X": PM_SUP}), TINY, ("a1",))


def test_two_point_concretization_respects_the_lattice():
    """Meets concretize to intersections exactly; joins cover unions."""
    subs = enumerate_subs(("X", "Y"), SMALL)
    abstractions = [
        MonoAbs({"X": G, "Y": U}),
        MonoAbs({"X": U, "Y": G}),
        MonoAbs({"X": G, "Y": G}),
    ]
    for a in abstractions:
        for b in abstractions:
            ga = set(gamma_filter(subs, a))
            gb = set(gamma_filter(subs, b))
            assert set(gamma_filter(subs, mabs_glb(a, b))) == ga & gb
            assert set(gamma_filter(subs, mabs_lub(a, b))) >= ga | gb


def test_parameter_concretization_respects_the_lattice_for_every_assignment():
    subs = enumerate_subs(("X", "Y"), SMALL)
    abstractions = [
        PolyAbs({"X": pm(("a1",)), "Y": pm(("a2",))}),
        PolyAbs({"X": pm(("a2",)), "Y": pm(("a1",), ("a2",))}),
    ]
    for a in abstractions:
        for b in abstractions:
            for kappa in Assignment.enumerate(("a1", "a2")):
                ua = set(upsilon_filter(subs, a, kappa))
                ub = set(upsilon_filter(subs, b, kappa))
                assert set(upsilon_filter(subs, pabs_glb(a, b), kappa)) == ua & ub
                assert set(upsilon_filter(subs, pabs_lub(a, b), kappa)) >= ua | ub


def test_sld_points_basic_append(load_corpus):
    prog = load_corpus("append")
    theta0 = Substitution({"L1": parse_term("[a]"), "L2": parse_term("[]")})
    points, outputs = sld_points(prog, prog.directive.goal, theta0)
    assert outputs == frozenset(
        {
            Substitution(
                {"L1": parse_term("[a]"), "L2": parse_term("[]"), "L3": parse_term("[a]")}
            )
        }
    )
    assert (1, 0) in points and (0, 0) in points


def test_sld_points_depth_cap():
    prog = parse_program("p(X) :- p(X).\n:- analyze(p(X), [X = u]).")
    with pytest.raises(BudgetExceeded):
        sld_points(prog, prog.directive.goal, Substitution({}), max_depth=10)


def test_sld_points_rejects_arithmetic_evaluation():
    prog = parse_program("q(X) :- X is a.\n:- analyze(q(X), [X = u]).")
    with pytest.raises(ValueError):
        sld_points(prog, prog.directive.goal, Substitution({}))


def test_trial_suites_pass_and_are_reproducible():
    first = run_precision_trials(40, seed=5)
    second = run_precision_trials(40, seed=5)
    assert first.ok and second.ok
    assert first.trials == second.trials == 40
    assert first.failures == second.failures

    mono = run_mono_safety_trials(15, seed=7, u=SMALL)
    assert mono.ok and mono.name == "mono-safety"
    poly = run_poly_safety_trials(10, seed=9, u=SMALL)
    assert poly.ok and poly.name == "poly-safety"


def test_lattice_suite_small_parameter_sets():
    one = run_lattice_suite(1)
    two = run_lattice_suite(2)
    assert one.ok and two.ok
    assert two.trials == 297
    assert two.trials > one.trials
