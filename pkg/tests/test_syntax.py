import pytest

from polyground.syntax import (
    Atom,
    Builtin,
    DirectiveError,
    PrologSyntaxError,
    Struct,
    UserCall,
    Var,
    is_ground,
    occurrence_order,
    parse_atom,
    parse_program,
    parse_term,
    render,
    vars_of,
)

APPEND = """\
% List concatenation.
append([], L, L).
append([H|L1], L2, [H|L3]) :- append(L1, L2, L3).

:- analyze(append(L1, L2, L3), [L1 = g, L2 = g, L3 = u]).
"""


def test_parse_append_shape():
    prog = parse_program(APPEND)
    assert len(prog.clauses) == 2
    assert [c.id for c in prog.clauses] == [0, 1]
    base, rec = prog.clauses
    assert base.head == Atom("append", (Struct("[]"), Var("L"), Var("L")))
    assert base.body == ()
    assert len(rec.body) == 1
    assert isinstance(rec.body[0], UserCall)
    assert rec.body[0].atom.key == ("append", 3)


def test_list_sugar_desugars_to_dot_pairs():
    t = parse_term("[a, b|T]")
    assert t == Struct(".", (Struct("a"), Struct(".", (Struct("b"), Var("T")))))
    assert parse_term("[]") == Struct("[]")
    assert parse_term("[a]") == Struct(".", (Struct("a"), Struct("[]")))


def test_render_round_trip():
    prog = parse_program(APPEND)
    again = parse_program(render(prog))
    assert again.clauses == prog.clauses
    assert again.directive.goal == prog.directive.goal
    assert again.directive.bindings == prog.directive.bindings


def test_render_resugars_lists():
    assert render(parse_term("[a, b|T]")) == "[a,b|T]"
    assert render(parse_term("[a, b]")) == "[a,b]"


def test_infix_builtins_parse():
    prog = parse_program(
        "p(X, Y) :- X < Y, X > Y, X =< Y, X >= Y, X =:= Y, X =\\= Y, X = Y, Y is X.\n"
        ":- analyze(p(X, Y), [X = g, Y = u]).\n"
    )
    kinds = [lit.kind for lit in prog.clauses[0].body]
    assert kinds == ["lt", "gt", "le", "ge", "arith-eq", "arith-ne", "unify-eq", "is"]


def test_anonymous_variables_are_fresh_and_distinct():
    prog = parse_program("p(_, _).\n:- analyze(p(X, Y), [X = g, Y = u]).\n")
    args = prog.clauses[0].head.args
    assert all(isinstance(a, Var) for a in args)
    assert args[0].name != args[1].name


def test_vars_and_occurrence_order():
    a = parse_atom("p(f(X, Y), X, g(Z))")
    assert vars_of(a) == {"X", "Y", "Z"}
    assert occurrence_order(a) == ["X", "Y", "Z"]
    assert is_ground(parse_term("f(a, g(b))"))
    assert not is_ground(parse_term("f(a, g(B))"))


def test_directive_params_in_first_appearance_order():
    prog = parse_program(
        "p(X, Y, Z).\n:- analyze(p(X, Y, Z), [X = beta, Y = g, Z = alpha]).\n"
    )
    assert prog.directive.params == ("beta", "alpha")
    assert prog.directive.binding_map == {"X": "beta", "Y": "g", "Z": "alpha"}


def test_clause_vars_property():
    prog = parse_program(APPEND)
    assert prog.clauses[1].vars == {"H", "L1", "L2", "L3"}


def test_undefined_calls_listed():
    prog = parse_program("p(X) :- q(X).\n:- analyze(p(X), [X = g]).\n")
    assert prog.undefined_calls() == [("q", 1)]
    full = parse_program("p(X) :- p(X).\n:- analyze(p(X), [X = g]).\n")
    assert full.undefined_calls() == []


@pytest.mark.parametrize(
    "source",
    [
        "p(a)",  # unterminated clause
        "p(a]. :- analyze(p(X), [X = g]).",
        "p(X) :- !. :- analyze(p(X), [X = g]).",
        "p(X) :- q ; r. :- analyze(p(X), [X = g]).",
        "p(X) :- \\+ q. :- analyze(p(X), [X = g]).",
        "p(X) :- (q -> r). :- analyze(p(X), [X = g]).",
        "true :- fail. :- analyze(true, []).",
    ],
)
def test_rejected_syntax(source):
    with pytest.raises(PrologSyntaxError):
        parse_program(source)


def test_syntax_error_carries_position():
    with pytest.raises(PrologSyntaxError) as info:
        parse_program("p(X) :- q(X, .\n:- analyze(p(X), [X = g]).\n")
    assert info.value.line == 1
    assert info.value.col > 0


@pytest.mark.parametrize(
    "source",
    [
        "p(a).",  # no directive
        "p(a). :- analyze(p(X), [X = g]). :- analyze(p(X), [X = g]).",
        ":- analyze(p(X), [X = g, X = u]). p(a).",
        ":- analyze(p(X), []). p(a).",  # X unbound in directive
        ":- analyze(p(X), [Y = g]). p(a).",  # Y not a goal variable
    ],
)
def test_directive_errors(source):
    with pytest.raises(DirectiveError):
        parse_program(source)


def test_parse_atom_and_term_helpers():
    assert parse_atom("p(X)").key == ("p", 1)
    assert parse_term("f(X)") == Struct("f", (Var("X"),))
    with pytest.raises(PrologSyntaxError):
        parse_atom("p(X) extra")


def test_comments_and_whitespace_ignored():
    prog = parse_program(
        "% leading comment\np(a). % trailing\n\n:- analyze(p(X), [X = g]). % end\n"
    )
    assert len(prog.clauses) == 1


def test_builtin_head_rejected():
    with pytest.raises(PrologSyntaxError):
        parse_program("is(X, Y). :- analyze(is(X, Y), [X = g, Y = g]).")
