"""Self-join-free Boolean conjunctive queries, facts and set databases.

Atoms keep their variables in a fixed order so that fact columns line up
positionally; everything that reasons about hierarchy uses the variable
*set* (``Atom.varset``).
"""

from __future__ import annotations

import json
import re
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

from .errors import (
    DuplicateRelation,
    EmptyQuery,
    RepeatedVariable,
    SchemaMismatch,
    UnknownVariable,
)

IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
# relations produced by elimination steps carry a "§n" suffix
RELATION = re.compile(r"[A-Za-z][A-Za-z0-9_]*(?:§[0-9]+)?\Z")

Constant = Union[int, str]


def domain_key(value: Constant) -> tuple:
    """Total order on constants: integers first, then strings."""
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise TypeError(f"domain constants are int or str, got {value!r}")
    return (0, value, "") if isinstance(value, int) else (1, 0, value)


def tuple_key(values: Iterable[Constant]) -> tuple:
    return tuple(domain_key(v) for v in values)


def format_constant(value: Constant) -> str:
    if isinstance(value, int):
        return str(value)
    return json.dumps(value, ensure_ascii=False)


@dataclass(frozen=True)
class Atom:
    relation: str
    vars: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if not RELATION.match(self.relation):
            raise ValueError(f"bad relation symbol {self.relation!r}")
        for v in self.vars:
            if not isinstance(v, str) or not IDENT.match(v):
                raise ValueError(f"bad variable name {v!r}")
        if len(set(self.vars)) != len(self.vars):
            raise RepeatedVariable(self)

    @property
    def varset(self) -> frozenset[str]:
        return frozenset(self.vars)

    @property
    def arity(self) -> int:
        return len(self.vars)

    def __str__(self) -> str:
        return f"{self.relation}({', '.join(self.vars)})"


@dataclass(frozen=True)
class Query:
    """A validated SJF-BCQ; atoms are stored sorted by relation symbol."""

    atoms: tuple[Atom, ...]
    name: str = "Q"
    _by_relation: Mapping[str, Atom] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        atoms = tuple(self.atoms)
        if not atoms:
            raise EmptyQuery("a query needs at least one atom")
        seen: dict[str, Atom] = {}
        for a in atoms:
            if a.relation in seen:
                raise DuplicateRelation(a.relation)
            seen[a.relation] = a
        object.__setattr__(
            self, "atoms", tuple(sorted(atoms, key=lambda a: a.relation))
        )
        object.__setattr__(self, "_by_relation", seen)

    def atom(self, relation: str) -> Atom:
        try:
            return self._by_relation[relation]
        except KeyError:
            raise SchemaMismatch(f"relation {relation!r} not in query") from None

    @property
    def relations(self) -> tuple[str, ...]:
        return tuple(a.relation for a in self.atoms)

    def __str__(self) -> str:
        return f"{self.name}() :- " + " ∧ ".join(str(a) for a in self.atoms)

    def to_text(self) -> str:
        """Render in the datalog file syntax accepted by the parser."""
        body = ", ".join(
            f"{a.relation}({','.join(a.vars)})" for a in self.atoms
        )
        return f"{self.name} :- {body}."


def validate_query(atoms: Iterable[Atom], name: str = "Q") -> Query:
    return Query(tuple(atoms), name=name)


def vars_of(q: Query) -> frozenset[str]:
    out: set[str] = set()
    for a in q.atoms:
        out.update(a.vars)
    return frozenset(out)


def atoms_containing(q: Query, y: str) -> frozenset[Atom]:
    hits = frozenset(a for a in q.atoms if y in a.varset)
    if not hits:
        raise UnknownVariable(y)
    return hits


def is_hierarchical_direct(q: Query) -> bool:
    """Pairwise nested-or-disjoint test on the atom sets of variables."""
    at = {v: atoms_containing(q, v) for v in vars_of(q)}
    for x, y in combinations(sorted(at), 2):
        ax, ay = at[x], at[y]
        if not (ax <= ay or ay <= ax or not (ax & ay)):
            return False
    return True


@dataclass(frozen=True, order=False)
class Fact:
    relation: str
    values: tuple[Constant, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        for v in self.values:
            domain_key(v)

    def sort_key(self) -> tuple:
        return (self.relation, len(self.values), tuple_key(self.values))

    def __lt__(self, other: "Fact") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return f"{self.relation}({','.join(map(format_constant, self.values))})"


class Database:
    """Immutable set of facts with a per-relation index."""

    __slots__ = ("_facts", "_index")

    def __init__(self, facts: Iterable[Fact] = ()):
        self._facts = frozenset(facts)
        index: dict[str, set[tuple]] = defaultdict(set)
        for f in self._facts:
            index[f.relation].add(f.values)
        self._index = {k: frozenset(v) for k, v in index.items()}

    def __iter__(self) -> Iterator[Fact]:
        return iter(sorted(self._facts))

    def __len__(self) -> int:
        return len(self._facts)

    def __contains__(self, fact: object) -> bool:
        return fact in self._facts

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Database):
            return self._facts == other._facts
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._facts)

    def __repr__(self) -> str:
        return f"Database({sorted(self._facts)!r})"

    @property
    def facts(self) -> frozenset[Fact]:
        return self._facts

    def rows(self, relation: str) -> frozenset[tuple]:
        return self._index.get(relation, frozenset())

    def __or__(self, other: "Database | Iterable[Fact]") -> "Database":
        extra = other.facts if isinstance(other, Database) else frozenset(other)
        return Database(self._facts | extra)

    def __sub__(self, other: "Database | Iterable[Fact]") -> "Database":
        drop = other.facts if isinstance(other, Database) else frozenset(other)
        return Database(self._facts - drop)

    def __and__(self, other: "Database") -> "Database":
        return Database(self._facts & other.facts)


def check_schema(q: Query, facts: Iterable[Fact]) -> None:
    for f in facts:
        atom = q.atom(f.relation)
        if atom.arity != len(f.values):
            raise SchemaMismatch(
                f"fact {f} has arity {len(f.values)}, atom {atom} has {atom.arity}"
            )


@dataclass(frozen=True)
class _JoinStep:
    atom: Atom
    key_vars: tuple[str, ...]  # bound before this atom is visited
    new_vars: tuple[str, ...]
    # bound values -> [(values of new_vars, full row)]
    index: dict[tuple, list[tuple[tuple, tuple]]]


def _join_plan(q: Query, d: Database, ordered: bool = True) -> list[_JoinStep]:
    """Visit order over the atoms, each with its rows bucketed by the
    values of already-bound variables.

    The next atom shares as many bound variables as possible (then fewest
    rows, then name), so most steps are index lookups rather than scans.
    """
    bound: set[str] = set()
    remaining = list(q.atoms)
    plan = []
    while remaining:
        atom = min(
            remaining,
            key=lambda a: (-len(a.varset & bound), len(d.rows(a.relation)), a.relation),
        )
        remaining.remove(atom)
        key_pos = [i for i, v in enumerate(atom.vars) if v in bound]
        new_pos = [i for i, v in enumerate(atom.vars) if v not in bound]
        index: dict[tuple, list] = defaultdict(list)
        rows = d.rows(atom.relation)
        for row in sorted(rows, key=tuple_key) if ordered else rows:
            if len(row) == atom.arity:
                key = tuple(row[i] for i in key_pos)
                index[key].append((tuple(row[i] for i in new_pos), row))
        plan.append(
            _JoinStep(
                atom,
                tuple(atom.vars[i] for i in key_pos),
                tuple(atom.vars[i] for i in new_pos),
                dict(index),
            )
        )
        bound |= atom.varset
    return plan


def _assignments(q: Query, d: Database) -> Iterator[dict[str, Constant]]:
    plan = _join_plan(q, d)

    def extend(i: int, env: dict[str, Constant]) -> Iterator[dict[str, Constant]]:
        if i == len(plan):
            yield env
            return
        step = plan[i]
        for vals, _ in step.index.get(tuple(env[v] for v in step.key_vars), ()):
            nxt = dict(env)
            nxt.update(zip(step.new_vars, vals))
            yield from extend(i + 1, nxt)

    return extend(0, {})


def _count(plan: list[_JoinStep], allowed: Callable[[int, tuple], bool] | None = None) -> int:
    env: dict[str, Constant] = {}

    def rec(i: int) -> int:
        if i == len(plan):
            return 1
        step = plan[i]
        total = 0
        for vals, row in step.index.get(tuple(env[v] for v in step.key_vars), ()):
            if allowed is None or allowed(i, row):
                env.update(zip(step.new_vars, vals))  # later lookups read bound vars only
                total += rec(i + 1)
        return total

    return rec(0)


def eval_bag_set(q: Query, d: Database) -> int:
    """Number of distinct satisfying assignments of ``q`` over ``d``."""
    return _count(_join_plan(q, d, ordered=False))


def bag_set_counter(
    q: Query, base: Database, optional: Sequence[Fact]
) -> Callable[[Iterable[int]], int]:
    """``chosen -> eval_bag_set(q, base ∪ {optional[i] for i in chosen})``.

    The join index is built once over all facts; each call skips the
    optional rows that were not chosen.  Meant for repair enumeration.
    """
    plan = _join_plan(q, base | optional, ordered=False)
    # per visited atom: row -> position in ``optional`` (absent for base rows)
    tags = [
        {f.values: i for i, f in enumerate(optional) if f.relation == step.atom.relation and f not in base}
        for step in plan
    ]

    def count(chosen: Iterable[int]) -> int:
        picked = set(chosen)

        def allowed(i: int, row: tuple) -> bool:
            t = tags[i].get(row)
            return t is None or t in picked

        return _count(plan, allowed)

    return count


def satisfies(q: Query, d: Database) -> bool:
    return next(_assignments(q, d), None) is not None
