"""Elimination planning and the generic evaluation loop over a 2-monoid.

Planning works on variable sets only and is kept apart from execution, so
one plan can drive any carrier (and the provenance carrier in lockstep with
a concrete one).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Generic, Iterable, Mapping, TypeVar, Union

from .algebra import PROVENANCE, ProvTree, TwoMonoid, leaf
from .errors import NonHierarchicalQuery, UnknownVariable, VariableSetMismatch
from .query import Atom, Database, Fact, Query, check_schema, tuple_key

K = TypeVar("K")

STEP_MARK = "§"


# ---------------------------------------------------------------- planning


@dataclass(frozen=True)
class Rule1:
    """Drop ``variable``, private to ``atom``, producing ``result``."""

    variable: str
    atom: Atom
    result: Atom

    def __str__(self) -> str:
        return f"Rule 1: eliminate {self.variable} from {self.atom} -> {self.result}"


@dataclass(frozen=True)
class Rule2:
    """Merge two atoms over the same variable set into ``result``."""

    left: Atom
    right: Atom
    result: Atom

    def __str__(self) -> str:
        return f"Rule 2: merge {self.left} and {self.right} -> {self.result}"


EliminationStep = Union[Rule1, Rule2]


@dataclass(frozen=True)
class NonHierarchical:
    """Planning outcome when neither rule applies before a single nullary atom."""

    steps: tuple[EliminationStep, ...]
    stuck: tuple[Atom, ...]

    def __str__(self) -> str:
        return "Q() :- " + " ∧ ".join(str(a) for a in self.stuck)


def _base(relation: str) -> str:
    return relation.split(STEP_MARK, 1)[0]


def _candidate_moves(atoms: list[Atom]) -> list[tuple]:
    """All applicable moves, Rule 1 first, each group in tie-break order."""
    owners: dict[str, list[Atom]] = {}
    for a in atoms:
        for v in a.vars:
            owners.setdefault(v, []).append(a)
    moves: list[tuple] = [
        (1, v, owned[0]) for v, owned in sorted(owners.items()) if len(owned) == 1
    ]
    ordered = sorted(atoms, key=lambda a: a.relation)
    for i, a in enumerate(ordered):
        for b in ordered[i + 1 :]:
            if a.varset == b.varset:
                moves.append((2, a, b))
    return moves


def plan_elimination(
    q: Query, rng: random.Random | None = None
) -> list[EliminationStep] | NonHierarchical:
    """Reduce ``q`` to one nullary atom.

    Without ``rng`` the plan is deterministic: Rule 1 on the smallest private
    variable if there is one, else Rule 2 on the smallest pair of atoms (by
    relation name).  With ``rng`` any applicable move may be picked; every
    such plan succeeds exactly when ``q`` is hierarchical.
    """
    atoms = list(q.atoms)
    steps: list[EliminationStep] = []
    while not (len(atoms) == 1 and atoms[0].arity == 0):
        moves = _candidate_moves(atoms)
        if not moves:
            return NonHierarchical(tuple(steps), tuple(sorted(atoms, key=lambda a: a.relation)))
        move = rng.choice(moves) if rng is not None else moves[0]
        n = len(steps) + 1
        if move[0] == 1:
            _, var, atom = move
            result = Atom(
                f"{_base(atom.relation)}{STEP_MARK}{n}",
                tuple(v for v in atom.vars if v != var),
            )
            steps.append(Rule1(var, atom, result))
            atoms[atoms.index(atom)] = result
        else:
            _, left, right = move
            result = Atom(f"{_base(left.relation)}{STEP_MARK}{n}", left.vars)
            steps.append(Rule2(left, right, result))
            atoms.remove(left)
            atoms.remove(right)
            atoms.append(result)
    return steps


def is_hierarchical(q: Query) -> bool:
    return not isinstance(plan_elimination(q), NonHierarchical)


def require_plan(q: Query) -> list[EliminationStep]:
    plan = plan_elimination(q)
    if isinstance(plan, NonHierarchical):
        raise NonHierarchicalQuery(q, stuck=plan)
    return plan


# ------------------------------------------------------- annotated storage


@dataclass
class RunStats:
    plus_ops: int = 0
    times_ops: int = 0
    steps: list[EliminationStep] = field(default_factory=list)
    # database size before the first step and after each step
    sizes: list[int] = field(default_factory=list)

    @property
    def total_ops(self) -> int:
        return self.plus_ops + self.times_ops


class AnnotatedRelation(Generic[K]):
    """Sparse K-relation: rows whose annotation is zero are never stored."""

    __slots__ = ("atom", "rows")

    def __init__(self, atom: Atom, rows: Mapping[tuple, K], monoid: TwoMonoid[K]):
        self.atom = atom
        clean: dict[tuple, K] = {}
        for key, val in rows.items():
            key = tuple(key)
            if len(key) != atom.arity:
                raise ValueError(f"row {key} does not match {atom}")
            if not monoid.is_zero(val):
                clean[key] = val
        self.rows = clean

    def __len__(self) -> int:
        return len(self.rows)

    def __repr__(self) -> str:
        return f"AnnotatedRelation({self.atom}, {len(self.rows)} rows)"

    def get(self, key: tuple, default: K) -> K:
        return self.rows.get(key, default)

    def items_sorted(self):
        return sorted(self.rows.items(), key=lambda kv: tuple_key(kv[0]))


class AnnotatedDatabase(Generic[K]):
    """One annotated relation per atom of the governing query."""

    def __init__(
        self,
        q: Query,
        monoid: TwoMonoid[K],
        relations: Mapping[str, AnnotatedRelation[K]] | None = None,
    ):
        self.query = q
        self.monoid = monoid
        relations = dict(relations or {})
        extra = set(relations) - set(q.relations)
        if extra:
            raise VariableSetMismatch(f"relations not in query: {sorted(extra)}")
        self.relations: dict[str, AnnotatedRelation[K]] = {}
        for atom in q.atoms:
            rel = relations.get(atom.relation)
            if rel is None:
                rel = AnnotatedRelation(atom, {}, monoid)
            elif rel.atom != atom:
                raise VariableSetMismatch(f"{rel.atom} does not match {atom}")
            self.relations[atom.relation] = rel

    @classmethod
    def from_annotations(
        cls, q: Query, monoid: TwoMonoid[K], annotations: Mapping[Fact, K]
    ) -> "AnnotatedDatabase[K]":
        check_schema(q, annotations)
        grouped: dict[str, dict[tuple, K]] = {r: {} for r in q.relations}
        for fact, val in annotations.items():
            grouped[fact.relation][fact.values] = val
        return cls(
            q,
            monoid,
            {r: AnnotatedRelation(q.atom(r), rows, monoid) for r, rows in grouped.items()},
        )

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.relations.values())

    def annotation(self, fact: Fact) -> K:
        return self.relations[fact.relation].get(fact.values, self.monoid.zero)


# --------------------------------------------------------------- the rules


def _count(stats: RunStats | None, attr: str, n: int = 1) -> None:
    if stats is not None:
        setattr(stats, attr, getattr(stats, attr) + n)


def apply_rule1(
    rel: AnnotatedRelation[K],
    y: str,
    m: TwoMonoid[K],
    result: Atom | None = None,
    stats: RunStats | None = None,
) -> AnnotatedRelation[K]:
    """⊕-fold the rows of ``rel`` over the values of ``y``.

    Absent rows carry zero, the ⊕ identity, so only stored rows are folded.
    """
    if y not in rel.atom.varset:
        raise UnknownVariable(y)
    pos = rel.atom.vars.index(y)
    if result is None:
        result = Atom(rel.atom.relation, rel.atom.vars[:pos] + rel.atom.vars[pos + 1 :])
    elif result.vars != rel.atom.vars[:pos] + rel.atom.vars[pos + 1 :]:
        raise VariableSetMismatch(f"{result} is not {rel.atom} without {y}")
    groups: dict[tuple, K] = {}
    for key, val in rel.items_sorted():
        short = key[:pos] + key[pos + 1 :]
        if short in groups:
            groups[short] = m.plus(groups[short], val)
            _count(stats, "plus_ops")
        else:
            groups[short] = val
    return AnnotatedRelation(result, groups, m)


def apply_rule2(
    r1: AnnotatedRelation[K],
    r2: AnnotatedRelation[K],
    m: TwoMonoid[K],
    result: Atom | None = None,
    stats: RunStats | None = None,
) -> AnnotatedRelation[K]:
    """⊗-combine two relations over the same variable set.

    Iterates the union of both supports: a row missing on one side meets
    the carrier's zero, which does not annihilate in every 2-monoid.  Rows
    missing on both sides stay absent because zero ⊗ zero = zero.
    """
    if r1.atom.varset != r2.atom.varset:
        raise VariableSetMismatch(f"{r1.atom} and {r2.atom} have different variables")
    if result is None:
        result = Atom(r1.atom.relation, r1.atom.vars)
    elif result.varset != r1.atom.varset:
        raise VariableSetMismatch(f"{result} does not match {r1.atom}")
    # column permutation from r2's order into the result's order
    perm2 = [r2.atom.vars.index(v) for v in result.vars]
    perm1 = [r1.atom.vars.index(v) for v in result.vars]
    left = {tuple(k[i] for i in perm1): v for k, v in r1.rows.items()}
    right = {tuple(k[i] for i in perm2): v for k, v in r2.rows.items()}
    zero = m.zero
    out: dict[tuple, K] = {}
    for key in sorted(left.keys() | right.keys(), key=tuple_key):
        out[key] = m.times(left.get(key, zero), right.get(key, zero))
        _count(stats, "times_ops")
    return AnnotatedRelation(result, out, m)


# ---------------------------------------------------------- the algorithm


def run_algorithm(
    q: Query,
    d: AnnotatedDatabase[K],
    m: TwoMonoid[K] | None = None,
    plan: list[EliminationStep] | None = None,
    observer: Callable[[EliminationStep, dict[str, AnnotatedRelation[K]]], None]
    | None = None,
) -> tuple[K, RunStats]:
    """Evaluate hierarchical ``q`` over the annotated database ``d``.

    Returns the annotation of the final nullary row (zero when that row was
    never produced) and the operation counts.  ``observer`` is called after
    every step with the current relations.
    """
    m = m if m is not None else d.monoid
    if plan is None:
        plan = require_plan(q)
    stats = RunStats(steps=list(plan))
    current: dict[str, AnnotatedRelation[K]] = dict(d.relations)
    stats.sizes.append(sum(len(r) for r in current.values()))
    for step in plan:
        if isinstance(step, Rule1):
            rel = current.pop(step.atom.relation)
            current[step.result.relation] = apply_rule1(
                rel, step.variable, m, step.result, stats
            )
        else:
            r1 = current.pop(step.left.relation)
            r2 = current.pop(step.right.relation)
            current[step.result.relation] = apply_rule2(r1, r2, m, step.result, stats)
        stats.sizes.append(sum(len(r) for r in current.values()))
        if observer is not None:
            observer(step, current)
    (final,) = current.values()
    return final.get((), m.zero), stats


def fact_symbol(fact: Fact) -> str:
    return str(fact)


def provenance_database(q: Query, d: Database) -> AnnotatedDatabase[ProvTree]:
    check_schema(q, d)
    return AnnotatedDatabase.from_annotations(
        q, PROVENANCE, {f: leaf(fact_symbol(f)) for f in d}
    )


def run_with_provenance(
    q: Query, d: Database, plan: list[EliminationStep] | None = None, observer=None
) -> ProvTree:
    """Run the algorithm with every fact as its own unique leaf symbol."""
    tree, _ = run_algorithm(q, provenance_database(q, d), PROVENANCE, plan, observer)
    return tree


def iter_annotations(relations: Iterable[AnnotatedRelation[K]]):
    for rel in relations:
        yield from rel.rows.values()
