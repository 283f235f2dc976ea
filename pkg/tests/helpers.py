"""Random queries and instances shared by the test modules."""

from __future__ import annotations

import random
from itertools import product

from hierq.applications import BsmInstance, ProbabilisticDatabase, ShapleyInstance
from hierq.query import Atom, Database, Fact, Query, is_hierarchical_direct

VARIABLES = "ABCDE"
RELATIONS = ("R", "S", "T", "U", "V")


def random_query(rng: random.Random, max_atoms: int = 5, max_vars: int = 5) -> Query:
    n_atoms = rng.randint(1, max_atoms)
    pool = VARIABLES[:max_vars]
    atoms = []
    for rel in rng.sample(RELATIONS, n_atoms):
        chosen = [v for v in pool if rng.random() < 0.4]
        rng.shuffle(chosen)
        atoms.append(Atom(rel, tuple(chosen)))
    return Query(tuple(atoms))


def random_hierarchical_query(
    rng: random.Random, max_atoms: int = 4, max_vars: int = 4
) -> Query:
    while True:
        q = random_query(rng, max_atoms, max_vars)
        if is_hierarchical_direct(q):
            return q


def all_facts(q: Query, domain=(1, 2, 3)) -> list[Fact]:
    return [
        Fact(a.relation, values)
        for a in q.atoms
        for values in product(domain, repeat=a.arity)
    ]


def random_facts(rng: random.Random, q: Query, limit: int, domain=(1, 2, 3)) -> list[Fact]:
    pool = all_facts(q, domain)
    return rng.sample(pool, rng.randint(0, min(limit, len(pool))))


def random_prob_instance(rng: random.Random, q: Query, limit: int = 12) -> ProbabilisticDatabase:
    def prob() -> float:
        r = rng.random()
        if r < 0.1:
            return 0.0
        if r < 0.2:
            return 1.0
        return rng.random()

    return ProbabilisticDatabase({f: prob() for f in random_facts(rng, q, limit)})


def random_bsm_instance(
    rng: random.Random, q: Query, d_limit: int = 12, extra_limit: int = 8, max_theta: int = 4
) -> BsmInstance:
    pool = all_facts(q)
    rng.shuffle(pool)
    d = pool[: rng.randint(0, min(d_limit, len(pool)))]
    rest = pool[len(d) :]
    extra = rest[: rng.randint(0, min(extra_limit, len(rest)))]
    # the repair database may repeat some facts of D
    overlap = [f for f in d if rng.random() < 0.3]
    return BsmInstance(Database(d), Database(extra + overlap), rng.randint(0, max_theta))


def random_shapley_instance(
    rng: random.Random, q: Query, exo_limit: int = 12, endo_limit: int = 8
) -> ShapleyInstance:
    pool = all_facts(q)
    rng.shuffle(pool)
    exo = pool[: rng.randint(0, min(exo_limit, len(pool)))]
    rest = pool[len(exo) :]
    endo = rest[: rng.randint(0, min(endo_limit, len(rest)))]
    return ShapleyInstance(Database(exo), Database(endo))


def intro_example():
    """Worked bag-set repair instance (query, D, Dʳ); budget 2 reaches 4."""
    q = Query(
        (
            Atom("R", ("A", "B")),
            Atom("S", ("A", "C")),
            Atom("T", ("A", "C", "D")),
        )
    )
    d = Database([Fact("R", (1, 5)), Fact("S", (1, 1)), Fact("S", (1, 2)), Fact("T", (1, 2, 4))])
    dr = Database(
        [Fact("R", (1, 6)), Fact("R", (1, 7)), Fact("T", (1, 1, 4)), Fact("T", (1, 2, 9))]
    )
    return q, d, dr


def q_nh() -> Query:
    return Query((Atom("R", ("X",)), Atom("S", ("X", "Y")), Atom("T", ("Y",))))
