"""Max-plus / max-times convolutions over budget-truncated vectors.

Entry ``i`` of a vector is the best multiplicity reachable by spending at
most ``i`` repair insertions.  Vectors are cut off at the instance budget:
entries past it are never needed to answer the problem.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import BudgetMismatch
from .base import TwoMonoid


@dataclass(frozen=True)
class BudgetVector:
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        if not entries:
            raise ValueError("a budget vector has at least one entry")
        for a, b in zip(entries, entries[1:]):
            if a > b:
                raise ValueError(f"budget vector must be nondecreasing: {entries}")
        if entries[0] < 0:
            raise ValueError("budget vector entries are naturals")
        object.__setattr__(self, "entries", entries)

    @property
    def budget(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self) -> str:
        return f"BudgetVector({list(self.entries)})"

    @classmethod
    def zeros(cls, budget: int) -> "BudgetVector":
        return cls((0,) * (budget + 1))

    @classmethod
    def ones(cls, budget: int) -> "BudgetVector":
        return cls((1,) * (budget + 1))

    @classmethod
    def star(cls, budget: int) -> "BudgetVector":
        """Multiplicity 0 for free, 1 once a single insertion is paid for."""
        return cls((0,) + (1,) * budget)


def _check(x1: BudgetVector, x2: BudgetVector) -> int:
    if x1.budget != x2.budget:
        raise BudgetMismatch(f"budgets differ: {x1.budget} vs {x2.budget}")
    return x1.budget


def bsm_plus(x1: BudgetVector, x2: BudgetVector) -> BudgetVector:
    n = _check(x1, x2)
    a, b = x1.entries, x2.entries
    return BudgetVector(
        tuple(max(a[j] + b[i - j] for j in range(i + 1)) for i in range(n + 1))
    )


def bsm_times(x1: BudgetVector, x2: BudgetVector) -> BudgetVector:
    n = _check(x1, x2)
    a, b = x1.entries, x2.entries
    return BudgetVector(
        tuple(max(a[j] * b[i - j] for j in range(i + 1)) for i in range(n + 1))
    )


class BudgetMonoid(TwoMonoid[BudgetVector]):
    name = "bsm"

    def __init__(self, budget: int):
        if budget < 0:
            raise ValueError("budget must be a natural number")
        self.budget = budget
        self._zero = BudgetVector.zeros(budget)
        self._one = BudgetVector.ones(budget)

    @property
    def zero(self) -> BudgetVector:
        return self._zero

    @property
    def one(self) -> BudgetVector:
        return self._one

    def star(self) -> BudgetVector:
        return BudgetVector.star(self.budget)

    def plus(self, x: BudgetVector, y: BudgetVector) -> BudgetVector:
        return bsm_plus(x, y)

    def times(self, x: BudgetVector, y: BudgetVector) -> BudgetVector:
        return bsm_times(x, y)

    def __repr__(self) -> str:
        return f"BudgetMonoid(budget={self.budget})"
