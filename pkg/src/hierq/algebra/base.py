"""The 2-monoid interface consumed by the elimination engine."""

from __future__ import annotations

import abc
from typing import Generic, TypeVar

K = TypeVar("K")


class TwoMonoid(abc.ABC, Generic[K]):
    """Two commutative monoids on one carrier with ``zero ⊗ zero = zero``.

    Distributivity is not assumed, and ``zero`` need not annihilate.
    """

    name: str = "abstract"

    @property
    @abc.abstractmethod
    def zero(self) -> K: ...

    @property
    @abc.abstractmethod
    def one(self) -> K: ...

    @abc.abstractmethod
    def plus(self, x: K, y: K) -> K: ...

    @abc.abstractmethod
    def times(self, x: K, y: K) -> K: ...

    def is_zero(self, x: K) -> bool:
        return self.equal(x, self.zero)

    def equal(self, x: K, y: K) -> bool:
        return x == y

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"
