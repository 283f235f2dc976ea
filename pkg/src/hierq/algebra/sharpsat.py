"""Counting carrier for #Sat: subset counts split by size and truth value."""

from __future__ import annotations

from dataclasses import dataclass
from operator import and_, or_
from typing import Callable

from ..errors import BoundMismatch
from .base import TwoMonoid


@dataclass(frozen=True)
class SatVector:
    """``true[k]`` / ``false[k]``: number of size-``k`` endogenous subsets
    under which the annotated formula is true / false."""

    true: tuple[int, ...]
    false: tuple[int, ...]

    def __post_init__(self):
        t, f = tuple(self.true), tuple(self.false)
        if len(t) != len(f) or not t:
            raise ValueError("true/false count vectors must have equal, nonzero length")
        if any(c < 0 for c in t + f):
            raise ValueError("counts are naturals")
        object.__setattr__(self, "true", t)
        object.__setattr__(self, "false", f)

    @property
    def n_max(self) -> int:
        return len(self.true) - 1

    def __getitem__(self, key: tuple[int, bool]) -> int:
        k, b = key
        if k > self.n_max:
            return 0
        return (self.true if b else self.false)[k]

    def mass(self) -> dict[tuple[int, bool], int]:
        """Nonzero entries, for readable comparisons in tests and output."""
        out = {}
        for k in range(self.n_max + 1):
            if self.false[k]:
                out[(k, False)] = self.false[k]
            if self.true[k]:
                out[(k, True)] = self.true[k]
        return out

    @classmethod
    def unit(cls, n_max: int, k: int, b: bool) -> "SatVector":
        t = [0] * (n_max + 1)
        f = [0] * (n_max + 1)
        (t if b else f)[k] = 1
        return cls(tuple(t), tuple(f))

    @classmethod
    def zero(cls, n_max: int) -> "SatVector":
        return cls.unit(n_max, 0, False)

    @classmethod
    def one(cls, n_max: int) -> "SatVector":
        return cls.unit(n_max, 0, True)

    @classmethod
    def star(cls, n_max: int) -> "SatVector":
        """An endogenous fact: absent at size 0, present (true) at size 1."""
        if n_max < 1:
            raise ValueError("star needs n_max >= 1")
        t = [0] * (n_max + 1)
        f = [0] * (n_max + 1)
        f[0] = 1
        t[1] = 1
        return cls(tuple(t), tuple(f))


def _convolve(
    x1: SatVector, x2: SatVector, combine: Callable[[bool, bool], bool]
) -> SatVector:
    if x1.n_max != x2.n_max:
        raise BoundMismatch(f"bounds differ: {x1.n_max} vs {x2.n_max}")
    n = x1.n_max
    out = {True: [0] * (n + 1), False: [0] * (n + 1)}
    side1 = ((True, x1.true), (False, x1.false))
    side2 = ((True, x2.true), (False, x2.false))
    for b1, c1 in side1:
        for b2, c2 in side2:
            target = out[combine(b1, b2)]
            for i1 in range(n + 1):
                a = c1[i1]
                if not a:
                    continue
                # sizes past n cannot occur for disjoint subsets of an n-fact set
                for i2 in range(n + 1 - i1):
                    if c2[i2]:
                        target[i1 + i2] += a * c2[i2]
    return SatVector(tuple(out[True]), tuple(out[False]))


def sat_plus(x1: SatVector, x2: SatVector) -> SatVector:
    return _convolve(x1, x2, or_)


def sat_times(x1: SatVector, x2: SatVector) -> SatVector:
    return _convolve(x1, x2, and_)


class SatMonoid(TwoMonoid[SatVector]):
    name = "sat"

    def __init__(self, n_max: int):
        if n_max < 0:
            raise ValueError("n_max must be a natural number")
        self.n_max = n_max
        self._zero = SatVector.zero(n_max)
        self._one = SatVector.one(n_max)

    @property
    def zero(self) -> SatVector:
        return self._zero

    @property
    def one(self) -> SatVector:
        return self._one

    def star(self) -> SatVector:
        return SatVector.star(self.n_max)

    def plus(self, x: SatVector, y: SatVector) -> SatVector:
        return sat_plus(x, y)

    def times(self, x: SatVector, y: SatVector) -> SatVector:
        return sat_times(x, y)

    def __repr__(self) -> str:
        return f"SatMonoid(n_max={self.n_max})"
