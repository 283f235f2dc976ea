"""Probabilities of independent events under disjunction and conjunction."""

from __future__ import annotations

from .base import TwoMonoid

TOLERANCE = 1e-9


def _clamp(p: float) -> float:
    return 0.0 if p < 0.0 else 1.0 if p > 1.0 else p


def prob_plus(p1: float, p2: float) -> float:
    return _clamp(p1 + p2 - p1 * p2)


def prob_times(p1: float, p2: float) -> float:
    return p1 * p2


class ProbabilityMonoid(TwoMonoid[float]):
    name = "prob"

    def __init__(self, tolerance: float = TOLERANCE):
        self.tolerance = tolerance

    @property
    def zero(self) -> float:
        return 0.0

    @property
    def one(self) -> float:
        return 1.0

    def plus(self, x: float, y: float) -> float:
        return prob_plus(x, y)

    def times(self, x: float, y: float) -> float:
        return prob_times(x, y)

    def is_zero(self, x: float) -> bool:
        # exact: pruning a tiny nonzero row would leak error into the result
        return x == 0.0

    def equal(self, x: float, y: float) -> bool:
        return abs(x - y) <= self.tolerance


PROB = ProbabilityMonoid()
