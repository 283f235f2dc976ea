"""Instance generator reducing balanced biclique to bag-set repair decisions.

Given a non-hierarchical query and a graph, :func:`bcbs_reduce` encodes the
edges into the shared atom and offers the two side atoms as repair facts;
a budget of ``2k`` reaches ``k²`` answers exactly when the graph contains a
``K_{k,k}`` with disjoint sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Hashable, Iterable

from .applications import BsmInstance
from .errors import EmptyGraph, HierarchicalQuery, InstanceTooLarge, SelfLoop
from .query import Atom, Constant, Database, Fact, Query, domain_key, vars_of

BCBS_CAP = 12


@dataclass(frozen=True)
class Graph:
    vertices: frozenset[Constant]
    edges: frozenset[frozenset[Constant]]

    def __post_init__(self):
        vertices = frozenset(self.vertices)
        edges = frozenset(frozenset(e) for e in self.edges)
        for e in edges:
            if len(e) != 2:
                raise SelfLoop(next(iter(e)))
            if not e <= vertices:
                raise ValueError(f"edge {set(e)} has an endpoint outside the vertex set")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(
        cls, edges: Iterable[tuple[Constant, Constant]], vertices: Iterable[Constant] = ()
    ) -> "Graph":
        edges = list(edges)
        vs = set(vertices)
        for u, v in edges:
            if u == v:
                raise SelfLoop(u)
            vs.update((u, v))
        return cls(frozenset(vs), frozenset(frozenset(e) for e in edges))

    def sorted_vertices(self) -> list[Constant]:
        return sorted(self.vertices, key=domain_key)

    def adjacent(self, u: Hashable, v: Hashable) -> bool:
        return frozenset((u, v)) in self.edges


@dataclass(frozen=True)
class NonHierarchicalWitness:
    """Variables ``var_a``/``var_b`` and atoms with ``var_a`` in R and S
    only, ``var_b`` in S and T only; ``remaining`` holds every other atom."""

    var_a: str
    var_b: str
    atom_r: Atom
    atom_s: Atom
    atom_t: Atom
    remaining: tuple[Atom, ...]


def find_witness(q: Query) -> NonHierarchicalWitness | None:
    variables = sorted(vars_of(q))
    atoms = q.atoms  # sorted by relation symbol
    for a, b in permutations(variables, 2):
        for r in atoms:
            if a not in r.varset or b in r.varset:
                continue
            for s in atoms:
                if a not in s.varset or b not in s.varset:
                    continue
                for t in atoms:
                    if b in t.varset and a not in t.varset:
                        rest = tuple(x for x in atoms if x not in (r, s, t))
                        return NonHierarchicalWitness(a, b, r, s, t, rest)
    return None


def _project(atom: Atom, w: dict[str, Constant]) -> Fact:
    return Fact(atom.relation, tuple(w[v] for v in atom.vars))


def bcbs_reduce(g: Graph, k: int, q: Query) -> tuple[BsmInstance, int]:
    """Build ``(D, Dʳ, θ=2k)`` and ``τ=k²`` for query ``q``.

    Every variable other than the two witness variables is pinned to the
    smallest vertex label.
    """
    if k < 1:
        raise ValueError("k must be positive")
    witness = find_witness(q)
    if witness is None:
        raise HierarchicalQuery(f"query is hierarchical: {q}")
    if not g.vertices:
        raise EmptyGraph("the reduction needs at least one vertex")
    vertices = g.sorted_vertices()
    pinned = vertices[0]
    others = sorted(vars_of(q) - {witness.var_a, witness.var_b})

    def assignment(u: Constant, v: Constant) -> dict[str, Constant]:
        w = {x: pinned for x in others}
        w[witness.var_a] = u
        w[witness.var_b] = v
        return w

    d: set[Fact] = set()
    repair: set[Fact] = set()
    for u in vertices:
        for v in vertices:
            w = assignment(u, v)
            repair.add(_project(witness.atom_r, w))
            repair.add(_project(witness.atom_t, w))
            if g.adjacent(u, v):
                d.add(_project(witness.atom_s, w))
                for p in witness.remaining:
                    d.add(_project(p, w))
    inst = BsmInstance(Database(d), Database(repair), theta=2 * k)
    return inst, k * k


def bcbs_brute(g: Graph, k: int, cap: int = BCBS_CAP) -> bool:
    """Is there a ``K_{k,k}`` subgraph with disjoint sides?"""
    if len(g.vertices) > cap:
        raise InstanceTooLarge(len(g.vertices), cap, "graph")
    vertices = g.sorted_vertices()
    if 2 * k > len(vertices):
        return False
    for left in combinations(vertices, k):
        # right side: vertices adjacent to all of ``left``
        common = [v for v in vertices if v not in left and all(g.adjacent(u, v) for u in left)]
        if len(common) >= k:
            return True
    return False
