"""Terms, clauses and programs of the analyzed Prolog subset, plus parser and printer.

The subset: definite clauses without cut, negation or DCG rules.  Lists are
sugar for './2' and '[]'; the only infix operators are the built-in
comparison, unification and arithmetic predicates, all at a single
non-associative precedence level; `%` starts a comment that runs to the end
of the line.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Union


class PrologSyntaxError(Exception):
    """Malformed source text; carries a 1-based line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class DirectiveError(Exception):
    """Missing, duplicate or inconsistent `:- analyze/2` directive."""


# --------------------------------------------------------------------------
# terms and atoms

@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, slots=True)
class Struct:
    """A function symbol applied to arguments; constants have no arguments."""

    functor: str
    args: tuple = ()

    def __repr__(self):
        if not self.args:
            return f"Struct({self.functor!r})"
        return f"Struct({self.functor!r}, {self.args!r})"


Term = Union[Var, Struct]


@dataclass(frozen=True, slots=True)
class Atom:
    """A predicate applied to argument terms."""

    pred: str
    args: tuple = ()

    @property
    def key(self) -> tuple[str, int]:
        return (self.pred, len(self.args))


# --------------------------------------------------------------------------
# literals, clauses, programs

@dataclass(frozen=True, slots=True)
class UserCall:
    atom: Atom


@dataclass(frozen=True, slots=True)
class Builtin:
    kind: str
    args: tuple = ()


Literal = Union[UserCall, Builtin]

# kind -> arity
BUILTIN_ARITY = {
    "unify-eq": 2,
    "lt": 2,
    "gt": 2,
    "le": 2,
    "ge": 2,
    "arith-eq": 2,
    "arith-ne": 2,
    "is": 2,
    "true": 0,
    "fail": 0,
}

# surface operator -> kind
INFIX_BUILTINS = {
    "=": "unify-eq",
    "<": "lt",
    ">": "gt",
    "=<": "le",
    ">=": "ge",
    "=:=": "arith-eq",
    "=\\=": "arith-ne",
    "is": "is",
}

_KIND_TO_OP = {kind: op for op, kind in INFIX_BUILTINS.items()}

MODE_LITERALS = ("g", "u")


def _collect_vars(obj, out: list):
    if isinstance(obj, Var):
        if obj.name not in out:
            out.append(obj.name)
    elif isinstance(obj, (Struct, Atom, Builtin)):
        for a in obj.args:
            _collect_vars(a, out)
    elif isinstance(obj, UserCall):
        _collect_vars(obj.atom, out)
    elif isinstance(obj, Clause):
        _collect_vars(obj.head, out)
        for lit in obj.body:
            _collect_vars(lit, out)
    else:
        raise TypeError(f"cannot collect variables from {type(obj).__name__}")


def vars_of(obj) -> frozenset[str]:
    """Set of variable names occurring in a term, atom, literal or clause."""
    out: list = []
    _collect_vars(obj, out)
    return frozenset(out)


def occurrence_order(obj) -> list[str]:
    """Variable names in first-occurrence (depth-first, left-to-right) order."""
    out: list = []
    _collect_vars(obj, out)
    return out


def is_ground(term) -> bool:
    if isinstance(term, Var):
        return False
    return all(is_ground(a) for a in term.args)


def rename_vars(entity, mapping: dict):
    """Apply a variable-name renaming to a term or atom (names absent from
    the mapping are kept)."""
    if isinstance(entity, Var):
        return Var(mapping.get(entity.name, entity.name))
    if isinstance(entity, Struct):
        return Struct(entity.functor, tuple(rename_vars(a, mapping) for a in entity.args))
    if isinstance(entity, Atom):
        return Atom(entity.pred, tuple(rename_vars(a, mapping) for a in entity.args))
    raise TypeError(f"cannot rename {type(entity).__name__}")


@dataclass(frozen=True)
class Clause:
    id: int
    head: Atom
    body: tuple = ()

    @property
    def vars(self) -> frozenset[str]:
        return vars_of(self)


@dataclass(frozen=True)
class Directive:
    """The `:- analyze(Goal, [V = p, ...])` instruction driving an analysis.

    Each goal variable is bound either to a mode parameter name or to one of
    the literal modes `g`/`u`.
    """

    goal: Atom
    bindings: tuple = ()  # (var name, param name or mode literal), source order

    @property
    def binding_map(self) -> dict[str, str]:
        return dict(self.bindings)

    @property
    def params(self) -> tuple[str, ...]:
        """Declared parameter names in first-appearance order."""
        seen: list[str] = []
        for _, p in self.bindings:
            if p not in MODE_LITERALS and p not in seen:
                seen.append(p)
        return tuple(seen)


@dataclass(frozen=True)
class Program:
    clauses: tuple
    directive: Directive

    @cached_property
    def _index(self) -> dict:
        idx: dict = {}
        for c in self.clauses:
            idx.setdefault(c.head.key, []).append(c)
        return idx

    @property
    def defined(self) -> frozenset:
        return frozenset(self._index)

    def clauses_for(self, pred: str, arity: int) -> tuple:
        return tuple(self._index.get((pred, arity), ()))

    def undefined_calls(self) -> list[tuple[str, int]]:
        """Predicates called by some body literal but never defined."""
        called = set()
        for c in self.clauses:
            for lit in c.body:
                if isinstance(lit, UserCall):
                    called.add(lit.atom.key)
        return sorted(called - set(self._index))


# --------------------------------------------------------------------------
# tokenizer

@dataclass(frozen=True, slots=True)
class _Token:
    type: str  # atom | var | punct | op | end | eof
    value: str
    line: int
    col: int


_PUNCT = set("()[],|")
# longest match first
_OPS = (":-", "=:=", "=\\=", "=<", ">=", "<", ">", "=")
_REJECTED = {
    "!": "cut is not supported",
    ";": "disjunction is not supported",
    "\\+": "negation is not supported",
    "->": "if-then-else is not supported",
    "-->": "DCG rules are not supported",
}


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def err(msg):
        raise PrologSyntaxError(msg, line, col)

    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == ".":
            nxt = text[i + 1] if i + 1 < n else ""
            if nxt == "" or nxt in " \t\r\n%":
                toks.append(_Token("end", ".", line, col))
                i += 1
                col += 1
                continue
            err("unexpected '.' (the list constructor is written with brackets)")
        for bad, why in _REJECTED.items():
            if text.startswith(bad, i):
                err(why)
        matched = None
        for op in _OPS:
            if text.startswith(op, i):
                matched = op
                break
        if matched:
            toks.append(_Token("op", matched, line, col))
            i += len(matched)
            col += len(matched)
            continue
        if ch in _PUNCT:
            toks.append(_Token("punct", ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Token("atom", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.islower():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("atom", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isupper() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("var", text[i:j], line, col))
            col += j - i
            i = j
            continue
        err(f"unexpected character {ch!r}")
    toks.append(_Token("eof", "", line, col))
    return toks


# --------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0
        # anonymous '_' occurrences get fresh names that cannot collide with
        # any variable written anywhere in the source
        self._used_vars = {t.value for t in self.toks if t.type == "var"}
        self._anon = 0

    # -- token plumbing

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def next(self) -> _Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def err(self, msg: str, tok: _Token | None = None):
        tok = tok or self.peek()
        raise PrologSyntaxError(msg, tok.line, tok.col)

    def expect(self, type_: str, value: str | None = None) -> _Token:
        t = self.peek()
        if t.type != type_ or (value is not None and t.value != value):
            want = value if value is not None else type_
            got = t.value if t.value else t.type
            self.err(f"expected {want!r}, found {got!r}")
        return self.next()

    def _fresh_anon(self) -> str:
        while True:
            self._anon += 1
            name = f"_G{self._anon}"
            if name not in self._used_vars:
                self._used_vars.add(name)
                return name

    # -- grammar

    def parse_program(self) -> Program:
        clauses: list[Clause] = []
        directive: Directive | None = None
        cid = 0
        while self.peek().type != "eof":
            if self.peek().type == "op" and self.peek().value == ":-":
                self.next()
                d = self._directive()
                if directive is not None:
                    raise DirectiveError("duplicate analyze directive")
                directive = d
            else:
                clauses.append(self._clause(cid))
                cid += 1
        if directive is None:
            raise DirectiveError("missing analyze directive")
        self._check_directive(directive)
        return Program(tuple(clauses), directive)

    def _check_directive(self, d: Directive):
        goal_vars = vars_of(d.goal)
        seen = set()
        for v, p in d.bindings:
            if v in seen:
                raise DirectiveError(f"directive binds {v} twice")
            seen.add(v)
            if v not in goal_vars:
                raise DirectiveError(f"directive binds {v}, which is not a goal variable")
        missing = sorted(goal_vars - seen)
        if missing:
            raise DirectiveError(f"directive leaves goal variables unbound: {', '.join(missing)}")

    def _directive(self) -> Directive:
        t = self.peek()
        if not (t.type == "atom" and t.value == "analyze"):
            self.err("unsupported directive (only analyze/2 is recognized)")
        self.next()
        self.expect("punct", "(")
        goal = self._goal_atom()
        self.expect("punct", ",")
        self.expect("punct", "[")
        bindings: list[tuple[str, str]] = []
        if not (self.peek().type == "punct" and self.peek().value == "]"):
            while True:
                v = self.expect("var")
                self.expect("op", "=")
                p = self.expect("atom")
                if not (p.value in MODE_LITERALS or p.value[0].isalpha()):
                    self.err("expected a parameter name or g/u", p)
                bindings.append((v.value, p.value))
                if self.peek().type == "punct" and self.peek().value == ",":
                    self.next()
                    continue
                break
        self.expect("punct", "]")
        self.expect("punct", ")")
        self.expect("end")
        return Directive(goal, tuple(bindings))

    def _goal_atom(self) -> Atom:
        t = self.peek()
        term = self._term()
        if not isinstance(term, Struct):
            self.err("goal must be a predicate call", t)
        if not term.functor[0].isalpha():
            self.err("goal predicate must be named", t)
        return Atom(term.functor, term.args)

    def _clause(self, cid: int) -> Clause:
        head_tok = self.peek()
        head_term = self._term()
        if not isinstance(head_term, Struct) or not head_term.functor[0].isalpha():
            self.err("clause head must be a predicate", head_tok)
        if self.peek().type == "op" and self.peek().value != ":-":
            self.err("clause head cannot be a built-in", head_tok)
        if head_term.functor in ("true", "fail") or (
            head_term.functor == "is" and len(head_term.args) == 2
        ):
            self.err(f"cannot redefine built-in {head_term.functor!r}", head_tok)
        head = Atom(head_term.functor, head_term.args)
        body: list[Literal] = []
        if self.peek().type == "op" and self.peek().value == ":-":
            self.next()
            while True:
                body.append(self._literal())
                if self.peek().type == "punct" and self.peek().value == ",":
                    self.next()
                    continue
                break
        self.expect("end")
        return Clause(cid, head, tuple(body))

    def _literal(self) -> Literal:
        start = self.peek()
        left = self._term()
        t = self.peek()
        op = None
        if t.type == "op" and t.value in INFIX_BUILTINS:
            op = t.value
        elif t.type == "atom" and t.value == "is":
            op = "is"
        if op is not None:
            self.next()
            right = self._term()
            return Builtin(INFIX_BUILTINS[op], (left, right))
        if isinstance(left, Var):
            self.err("a variable is not a valid goal", start)
        if not left.functor[0].isalpha():
            self.err("a number is not a valid goal", start)
        if left.functor in ("true", "fail") and not left.args:
            return Builtin(left.functor)
        return UserCall(Atom(left.functor, left.args))

    def _term(self) -> Term:
        t = self.peek()
        if t.type == "var":
            self.next()
            if t.value == "_":
                return Var(self._fresh_anon())
            return Var(t.value)
        if t.type == "atom":
            self.next()
            if self.peek().type == "punct" and self.peek().value == "(":
                if t.value == "is":
                    self.err("'is' cannot be used as a function symbol", t)
                self.next()
                args = [self._term()]
                while self.peek().type == "punct" and self.peek().value == ",":
                    self.next()
                    args.append(self._term())
                self.expect("punct", ")")
                return Struct(t.value, tuple(args))
            return Struct(t.value)
        if t.type == "punct" and t.value == "[":
            return self._list()
        self.err(f"expected a term, found {t.value or t.type!r}")

    def _list(self) -> Term:
        self.expect("punct", "[")
        if self.peek().type == "punct" and self.peek().value == "]":
            self.next()
            return Struct("[]")
        items = [self._term()]
        while self.peek().type == "punct" and self.peek().value == ",":
            self.next()
            items.append(self._term())
        tail: Term = Struct("[]")
        if self.peek().type == "punct" and self.peek().value == "|":
            self.next()
            tail = self._term()
        self.expect("punct", "]")
        for item in reversed(items):
            tail = Struct(".", (item, tail))
        return tail


def parse_program(text: str) -> Program:
    """Parse a complete source text into a Program.

    Raises PrologSyntaxError (with position) on malformed text and
    DirectiveError on a missing/duplicate/ill-formed analyze directive.
    """
    return _Parser(text).parse_program()


def parse_term(text: str) -> Term:
    """Parse a single term; convenient in tests."""
    p = _Parser(text)
    term = p._term()
    if p.peek().type not in ("eof", "end"):
        p.err("trailing input after term")
    return term


def parse_atom(text: str) -> Atom:
    t = parse_term(text)
    if not isinstance(t, Struct) or not t.functor[0].isalpha():
        raise ValueError(f"not an atom: {text!r}")
    return Atom(t.functor, t.args)


# --------------------------------------------------------------------------
# printer

def render(entity) -> str:
    """Render any syntax object back to concrete syntax.

    Inverse of the parser up to whitespace: parsing the rendering of a parsed
    entity yields the same structure.
    """
    if isinstance(entity, Var):
        return entity.name
    if isinstance(entity, Struct):
        return _render_struct(entity)
    if isinstance(entity, Atom):
        return _render_struct(Struct(entity.pred, entity.args))
    if isinstance(entity, UserCall):
        return render(entity.atom)
    if isinstance(entity, Builtin):
        if entity.kind in ("true", "fail"):
            return entity.kind
        op = _KIND_TO_OP[entity.kind]
        return f"{render(entity.args[0])} {op} {render(entity.args[1])}"
    if isinstance(entity, Clause):
        if not entity.body:
            return f"{render(entity.head)}."
        body = ", ".join(render(lit) for lit in entity.body)
        return f"{render(entity.head)} :- {body}."
    if isinstance(entity, Directive):
        bindings = ", ".join(f"{v} = {p}" for v, p in entity.bindings)
        return f":- analyze({render(entity.goal)}, [{bindings}])."
    if isinstance(entity, Program):
        lines = [render(c) for c in entity.clauses]
        lines.append("")
        lines.append(render(entity.directive))
        return "\n".join(lines) + "\n"
    raise TypeError(f"cannot render {type(entity).__name__}")


def _render_struct(s: Struct) -> str:
    if s.functor == "." and len(s.args) == 2:
        items = []
        node: Term = s
        while isinstance(node, Struct) and node.functor == "." and len(node.args) == 2:
            items.append(render(node.args[0]))
            node = node.args[1]
        inner = ",".join(items)
        if isinstance(node, Struct) and node.functor == "[]" and not node.args:
            return f"[{inner}]"
        return f"[{inner}|{render(node)}]"
    if not s.args:
        return s.functor
    return f"{s.functor}({','.join(render(a) for a in s.args)})"
