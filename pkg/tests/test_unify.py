import pytest
from hypothesis import given, strategies as st

from polyground.syntax import Atom, Struct, Var, parse_atom, parse_term, rename_vars, vars_of
from polyground.unify import (
    FAIL,
    EqSet,
    Renamer,
    Substitution,
    compose,
    empty,
    eq_of,
    mgu,
    mgu_pairs,
)


def sub(**bindings):
    return Substitution({k: parse_term(v) for k, v in bindings.items()})


def test_substitution_drops_identity_bindings():
    s = Substitution({"X": Var("X"), "Y": Struct("a")})
    assert s.domain == {"Y"}


def test_substitution_rejects_unsolved_form():
    with pytest.raises(ValueError):
        Substitution({"X": Struct("f", (Var("X"),))})
    with pytest.raises(ValueError):
        Substitution({"X": Var("Y"), "Y": Struct("a")})


def test_substitution_apply_and_restrict():
    s = sub(X="f(Y)", Z="a")
    assert s.apply(parse_term("g(X, Z, W)")) == parse_term("g(f(Y), a, W)")
    assert s.restrict({"X"}).domain == {"X"}
    assert s.get("W") == Var("W")


def test_substitution_equality_ignores_insertion_order():
    a = Substitution({"X": Struct("a"), "Y": Struct("b")})
    b = Substitution({"Y": Struct("b"), "X": Struct("a")})
    assert a == b and hash(a) == hash(b)


def test_compose_applies_inner_first():
    theta = sub(X="f(Y)")
    u = sub(Y="a")
    c = compose(u, theta)
    assert c.apply(Var("X")) == parse_term("f(a)")
    assert c.apply(Var("Y")) == parse_term("a")
    assert compose(FAIL, theta) is FAIL
    assert compose(u, FAIL) is FAIL


def test_mgu_basic():
    s = mgu(parse_term("f(X, b)"), parse_term("f(a, Y)"))
    assert s == sub(X="a", Y="b")
    assert mgu(parse_term("a"), parse_term("b")) is FAIL
    assert mgu(parse_term("f(X)"), parse_term("g(X)")) is FAIL
    assert mgu(parse_term("f(X)"), parse_term("f(X, Y)")) is FAIL


def test_mgu_occurs_check():
    assert mgu(Var("X"), parse_term("f(X)")) is FAIL
    assert mgu(parse_term("f(X, X)"), parse_term("f(Y, g(Y))")) is FAIL


def test_mgu_var_var_binds_right_to_left():
    s = mgu(Var("X"), Var("Y"))
    assert s == Substitution({"Y": Var("X")})


def test_mgu_atoms():
    s = mgu(parse_atom("p(X, a)"), parse_atom("p(b, Y)"))
    assert s == sub(X="b", Y="a")
    assert mgu(parse_atom("p(X)"), parse_atom("q(X)")) is FAIL
    with pytest.raises(TypeError):
        mgu(parse_atom("p(X)"), parse_term("p(X)"))


def test_mgu_produces_idempotent_solved_form():
    s = mgu(parse_term("f(X, g(Y))"), parse_term("f(g(Y), Z)"))
    assert s is not FAIL
    for x in s.domain:
        assert s.apply(s.get(x)) == s.get(x)


def test_worked_example_solved_form():
    a = parse_atom("g(X, f(Y, f(Z, Z)), Y)")
    b = parse_atom("g(f(X, Y), Z, X)")
    ren = Renamer()
    m = ren.renaming(sorted(vars_of(a)))
    e0 = eq_of(mgu(rename_vars(a, m), b))
    f = lambda *args: Struct("f", args)
    y0, z0 = Var("Y#0"), Var("Z#0")
    assert e0.equations == (
        ("X#0", f(y0, Var("Y"))),
        ("Z", f(y0, f(z0, z0))),
        ("X", y0),
    )


def test_eqset_validates_solved_form():
    with pytest.raises(ValueError):
        EqSet((("X", Var("X")),))
    e = EqSet((("X", parse_term("f(Y)")),))
    assert e.domain == {"X"} and e.range_vars == {"Y"}
    assert eq_of(FAIL) is FAIL


def test_renamer_rounds_do_not_collide():
    r = Renamer()
    first = r.renaming(["X", "Y"])
    second = r.renaming(["X"])
    assert first == {"X": "X#0", "Y": "Y#0"}
    assert second == {"X": "X#1"}


def test_rename_all_renames_both_sides():
    s = sub(X="f(Y)")
    renamed = s.rename_all({"X": "X#0", "Y": "Y#0"})
    assert renamed == Substitution({"X#0": Struct("f", (Var("Y#0"),))})


terms = st.recursive(
    st.sampled_from([Var("X"), Var("Y"), Var("Z"), Struct("a"), Struct("b")]),
    lambda inner: st.builds(lambda x: Struct("f", (x,)), inner)
    | st.builds(lambda x, y: Struct("g", (x, y)), inner, inner),
    max_leaves=6,
)


@given(terms, terms)
def test_mgu_is_a_unifier_and_idempotent(t1, t2):
    s = mgu(t1, t2)
    if s is FAIL:
        return
    assert s.apply(t1) == s.apply(t2)
    assert s.apply(s.apply(t1)) == s.apply(t1)


@given(terms, terms, terms)
def test_compose_is_application_composition(t, u, v):
    s1 = mgu(t, u)
    if s1 is FAIL:
        return
    s2 = mgu(s1.apply(u), s1.apply(v))
    if s2 is FAIL:
        return
    c = compose(s2, s1)
    probe = Struct("h", (t, u, v))
    assert c.apply(probe) == s2.apply(s1.apply(probe))


def test_mgu_pairs_matches_sequential_solving():
    pairs = [(Var("X"), parse_term("f(Y)")), (Var("Y"), parse_term("a"))]
    s = mgu_pairs(pairs)
    assert s == sub(X="f(a)", Y="a")
    assert mgu_pairs([(Var("X"), Struct("a")), (Var("X"), Struct("b"))]) is FAIL
    assert mgu_pairs([]) == empty()
