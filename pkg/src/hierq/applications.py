"""Problem-level front ends: probabilistic evaluation, bag-set maximization,
#Sat counting and Shapley values of facts.

Each problem is solved by annotating the input facts in the matching
carrier and running the one generic algorithm from :mod:`hierq.engine`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Mapping

from .algebra import PROB, BudgetMonoid, BudgetVector, SatMonoid, SatVector
from .engine import AnnotatedDatabase, RunStats, require_plan, run_algorithm
from .errors import FactNotEndogenous, OverlapError, ProbabilityOutOfRange
from .query import Database, Fact, Query, check_schema


@dataclass(frozen=True)
class ProbabilisticDatabase:
    """Tuple-independent database: each fact is present independently."""

    facts: Mapping[Fact, float]

    def __post_init__(self):
        probs = dict(self.facts)
        for f, p in probs.items():
            if not (0.0 <= p <= 1.0):
                raise ProbabilityOutOfRange(f"probability of {f} is {p}")
        object.__setattr__(self, "facts", probs)

    def __len__(self) -> int:
        return len(self.facts)

    def database(self) -> Database:
        return Database(self.facts)


@dataclass(frozen=True)
class BsmInstance:
    d: Database
    d_repair: Database
    theta: int

    def __post_init__(self):
        if self.theta < 0:
            raise ValueError("theta must be a natural number")

    @property
    def insertable(self) -> Database:
        """Repair facts not already in the database."""
        return self.d_repair - self.d


@dataclass(frozen=True)
class ShapleyInstance:
    d_exo: Database
    d_endo: Database = field(default_factory=Database)

    def __post_init__(self):
        both = self.d_exo & self.d_endo
        if len(both):
            raise OverlapError(
                f"facts both exogenous and endogenous: {', '.join(map(str, both))}"
            )


# -------------------------------------------------------------- probability


def annotate_probabilistic(
    q: Query, pd: ProbabilisticDatabase
) -> AnnotatedDatabase[float]:
    check_schema(q, pd.facts)
    return AnnotatedDatabase.from_annotations(q, PROB, pd.facts)


def prob_query_eval(q: Query, pd: ProbabilisticDatabase) -> float:
    plan = require_plan(q)
    value, _ = run_algorithm(q, annotate_probabilistic(q, pd), PROB, plan)
    return value


# ---------------------------------------------------------- bag-set repair


def annotate_bsm(q: Query, inst: BsmInstance) -> AnnotatedDatabase[BudgetVector]:
    check_schema(q, inst.d)
    check_schema(q, inst.d_repair)
    m = BudgetMonoid(inst.theta)
    ann: dict[Fact, BudgetVector] = {f: m.star() for f in inst.d_repair}
    ann.update({f: m.one for f in inst.d})
    return AnnotatedDatabase.from_annotations(q, m, ann)


def bag_set_maximize(
    q: Query, inst: BsmInstance, stats: list[RunStats] | None = None
) -> BudgetVector:
    """Entry ``i``: best bag-set count over repairs inserting at most ``i`` facts."""
    plan = require_plan(q)
    annotated = annotate_bsm(q, inst)
    value, run = run_algorithm(q, annotated, annotated.monoid, plan)
    if stats is not None:
        stats.append(run)
    return value


def bsm_decide(q: Query, inst: BsmInstance, tau: int) -> bool:
    return bag_set_maximize(q, inst)[inst.theta] >= tau


# ---------------------------------------------------------- #Sat / Shapley


def annotate_shapley(q: Query, inst: ShapleyInstance) -> AnnotatedDatabase[SatVector]:
    check_schema(q, inst.d_exo)
    check_schema(q, inst.d_endo)
    m = SatMonoid(len(inst.d_endo))
    ann: dict[Fact, SatVector] = {f: m.one for f in inst.d_exo}
    for f in inst.d_endo:
        ann[f] = m.star()
    return AnnotatedDatabase.from_annotations(q, m, ann)


def count_sat(
    q: Query, inst: ShapleyInstance, stats: list[RunStats] | None = None
) -> list[int]:
    """Entry ``k``: number of size-``k`` endogenous subsets making ``q`` true."""
    plan = require_plan(q)
    annotated = annotate_shapley(q, inst)
    value, run = run_algorithm(q, annotated, annotated.monoid, plan)
    if stats is not None:
        stats.append(run)
    return list(value.true)


def shapley_coefficient(n: int, k: int) -> Fraction:
    """Weight of a size-``k`` coalition for one player among ``n``."""
    return Fraction(factorial(k) * factorial(n - k - 1), factorial(n))


def shapley_value(
    q: Query, inst: ShapleyInstance, f: Fact, stats: list[RunStats] | None = None
) -> Fraction:
    if f not in inst.d_endo:
        raise FactNotEndogenous(f"{f} is not an endogenous fact")
    require_plan(q)
    n = len(inst.d_endo)
    rest = inst.d_endo - [f]
    with_f = count_sat(q, ShapleyInstance(inst.d_exo | [f], rest), stats)
    without_f = count_sat(q, ShapleyInstance(inst.d_exo, rest), stats)
    return sum(
        (shapley_coefficient(n, k) * (with_f[k] - without_f[k]) for k in range(n)),
        Fraction(0),
    )


def shapley_all(
    q: Query, inst: ShapleyInstance, stats: list[RunStats] | None = None
) -> dict[Fact, Fraction]:
    require_plan(q)
    return {f: shapley_value(q, inst, f, stats) for f in inst.d_endo}
