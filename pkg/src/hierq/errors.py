"""Exception hierarchy shared by every hierq module."""

from __future__ import annotations


class HierqError(Exception):
    """Base class for all errors raised by hierq."""


class QueryError(HierqError):
    pass


class DuplicateRelation(QueryError):
    def __init__(self, symbol: str):
        super().__init__(f"relation symbol {symbol!r} used by more than one atom")
        self.symbol = symbol


class RepeatedVariable(QueryError):
    def __init__(self, atom):
        super().__init__(f"variable repeated within atom {atom}")
        self.atom = atom


class UnknownVariable(QueryError):
    def __init__(self, variable: str):
        super().__init__(f"unknown variable {variable!r}")
        self.variable = variable


class EmptyQuery(QueryError):
    pass


class SchemaMismatch(HierqError):
    """A fact does not fit the query schema (unknown relation or wrong arity)."""


class NonHierarchicalQuery(HierqError):
    def __init__(self, query, stuck=None):
        msg = f"query is not hierarchical: {query}"
        if stuck is not None:
            msg += f" (elimination stuck at {stuck})"
        super().__init__(msg)
        self.query = query
        self.stuck = stuck


class HierarchicalQuery(HierqError):
    """Raised where a non-hierarchical query is required."""


class BudgetMismatch(HierqError):
    pass


class BoundMismatch(HierqError):
    pass


class VariableSetMismatch(HierqError):
    pass


class ProbabilityOutOfRange(HierqError):
    pass


class OverlapError(HierqError):
    pass


class FactNotEndogenous(HierqError):
    pass


class InstanceTooLarge(HierqError):
    def __init__(self, size: int, cap: int, what: str = "instance"):
        super().__init__(f"{what} size {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


class NotDecomposable(HierqError):
    pass


class EmptyGraph(HierqError):
    pass


class SelfLoop(HierqError):
    def __init__(self, vertex):
        super().__init__(f"self-loop on vertex {vertex!r}")
        self.vertex = vertex


class ParseError(HierqError):
    """Syntax error in a query, facts, or graph file (1-based line/column)."""

    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        msg = f"line {line}, col {col}: expected {expected}"
        if found:
            msg += f", found {found!r}"
        super().__init__(msg)
        self.line = line
        self.col = col
        self.expected = expected


class DuplicateFact(HierqError):
    def __init__(self, fact, line: int | None = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"duplicate fact {fact}{where}")
        self.fact = fact
