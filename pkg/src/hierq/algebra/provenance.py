"""And/Or provenance trees over fact symbols.

Trees are kept canonical: nested nodes of the same kind are merged, children
are sorted by a structural key, and the constant leaves are dropped where
they act as the identity (``true`` under an And, ``false`` under an Or).
Repeated ``false`` children of an And collapse to one, which is what makes
``false ∧ false = false`` hold structurally.  No other Boolean
simplification is done: ``x ∧ false`` stays as it is, because the counting
carrier still needs the facts of ``x``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .base import TwoMonoid

SYM, TRUE_, FALSE_, AND, OR = "sym", "true", "false", "and", "or"


@dataclass(frozen=True)
class ProvTree:
    kind: str
    symbol: str | None = None
    children: tuple["ProvTree", ...] = ()
    key: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind == SYM:
            key: tuple = (0, self.symbol)
        elif self.kind == TRUE_:
            key = (1,)
        elif self.kind == FALSE_:
            key = (2,)
        else:
            key = (3 if self.kind == AND else 4, tuple(c.key for c in self.children))
        object.__setattr__(self, "key", key)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ProvTree):
            return self.key == other.key
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.key)

    def __str__(self) -> str:
        if self.kind == SYM:
            return str(self.symbol)
        if self.kind in (TRUE_, FALSE_):
            return self.kind
        sep = " & " if self.kind == AND else " | "
        return "(" + sep.join(str(c) for c in self.children) + ")"

    def leaves(self) -> Iterator["ProvTree"]:
        if self.children:
            for c in self.children:
                yield from c.leaves()
        else:
            yield self


TRUE = ProvTree(TRUE_)
FALSE = ProvTree(FALSE_)


def leaf(symbol: str) -> ProvTree:
    return ProvTree(SYM, symbol=symbol)


def _flatten(kind: str, parts: Iterable[ProvTree]) -> list[ProvTree]:
    out: list[ProvTree] = []
    for p in parts:
        if p.kind == kind:
            out.extend(p.children)
        else:
            out.append(p)
    return out


def conj(*parts: ProvTree) -> ProvTree:
    kids = [c for c in _flatten(AND, parts) if c.kind != TRUE_]
    if sum(1 for c in kids if c.kind == FALSE_) > 1:
        kids = [c for c in kids if c.kind != FALSE_] + [FALSE]
    if not kids:
        return TRUE
    if len(kids) == 1:
        return kids[0]
    return ProvTree(AND, children=tuple(sorted(kids, key=lambda c: c.key)))


def disj(*parts: ProvTree) -> ProvTree:
    kids = [c for c in _flatten(OR, parts) if c.kind != FALSE_]
    if not kids:
        return FALSE
    if len(kids) == 1:
        return kids[0]
    return ProvTree(OR, children=tuple(sorted(kids, key=lambda c: c.key)))


def prov_plus(x: ProvTree, y: ProvTree) -> ProvTree:
    return disj(x, y)


def prov_times(x: ProvTree, y: ProvTree) -> ProvTree:
    return conj(x, y)


def support(x: ProvTree) -> frozenset[str]:
    return frozenset(l.symbol for l in x.leaves() if l.kind == SYM)


def is_decomposable(x: ProvTree) -> bool:
    """No fact symbol labels two leaves (constant leaves may repeat)."""
    counts = Counter(l.symbol for l in x.leaves() if l.kind == SYM)
    return all(c == 1 for c in counts.values())


class ProvenanceMonoid(TwoMonoid[ProvTree]):
    name = "provenance"

    @property
    def zero(self) -> ProvTree:
        return FALSE

    @property
    def one(self) -> ProvTree:
        return TRUE

    def plus(self, x: ProvTree, y: ProvTree) -> ProvTree:
        return prov_plus(x, y)

    def times(self, x: ProvTree, y: ProvTree) -> ProvTree:
        return prov_times(x, y)


PROVENANCE = ProvenanceMonoid()
