"""Exception types shared across the analyzer."""


class ScopeMismatch(ValueError):
    """Operands range over incompatible variable scopes."""


class ScopeOverlap(ValueError):
    """Abstractions being combined must have disjoint scopes."""


class UnknownParam(ValueError):
    """Mode parameter not declared by the analysis directive."""


class UndefinedPredicate(Exception):
    """A body literal calls a predicate the program does not define."""

    def __init__(self, pred: str, arity: int):
        super().__init__(f"undefined predicate {pred}/{arity}")
        self.pred = pred
        self.arity = arity


class NonTermination(Exception):
    """Defensive iteration cap was hit.

    The abstract lattices are finite and every memo update is a lub, so
    hitting this indicates a bug rather than a genuinely diverging analysis.
    """


class DomainMismatch(TypeError):
    """Operation applied to a value from the wrong analysis domain."""


class BudgetExceeded(Exception):
    """An enumeration guard tripped.

    The brute-force oracle is only meaningful when exhaustive, so instead of
    silently truncating it refuses to run.
    """
