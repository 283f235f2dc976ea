import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hierq.errors import (
    DuplicateRelation,
    EmptyQuery,
    RepeatedVariable,
    SchemaMismatch,
    UnknownVariable,
)
from hierq.query import (
    Atom,
    Database,
    Fact,
    Query,
    atoms_containing,
    bag_set_counter,
    check_schema,
    domain_key,
    eval_bag_set,
    is_hierarchical_direct,
    satisfies,
    validate_query,
    vars_of,
)

from helpers import intro_example, q_nh, random_facts, random_query

Q1 = Query((Atom("R", ("A", "B")), Atom("S", ("A", "C")), Atom("T", ("A", "C", "D"))))


def test_valid_query_sorted_by_relation():
    q = validate_query([Atom("T", ("A", "C", "D")), Atom("R", ("A", "B")), Atom("S", ("A", "C"))])
    assert q == Q1
    assert [a.relation for a in q.atoms] == ["R", "S", "T"]


def test_self_join_rejected():
    with pytest.raises(DuplicateRelation):
        validate_query([Atom("R", ("A", "B")), Atom("R", ("B", "C"))])


def test_nullary_atom_and_empty_query():
    q = validate_query([Atom("R", ())])
    assert vars_of(q) == frozenset()
    with pytest.raises(EmptyQuery):
        validate_query([])


def test_repeated_variable():
    with pytest.raises(RepeatedVariable):
        Atom("R", ("A", "A"))


@pytest.mark.parametrize("bad", ["1R", "", "R-1", "R S"])
def test_bad_relation_names(bad):
    with pytest.raises(ValueError):
        Atom(bad, ())


def test_vars_of():
    assert vars_of(Q1) == {"A", "B", "C", "D"}
    assert vars_of(Query((Atom("R", ("A",)), Atom("S", ("B",))))) == {"A", "B"}


def test_atoms_containing():
    r, s, t = Q1.atoms
    assert atoms_containing(Q1, "C") == {s, t}
    assert atoms_containing(Q1, "B") == {r}
    assert atoms_containing(Q1, "A") == {r, s, t}
    with pytest.raises(UnknownVariable):
        atoms_containing(Q1, "Z")


@pytest.mark.parametrize(
    "atoms, expected",
    [
        ([("E", "XY"), ("F", "YZ")], True),
        ([("R", "X"), ("S", "XY"), ("T", "Y")], False),
        ([("R", "AB"), ("S", "BC"), ("T", "CD")], False),
        ([("R", "AB"), ("S", "AC"), ("T", "ACD")], True),
        ([("R", "A"), ("S", "B")], True),
    ],
)
def test_direct_hierarchy(atoms, expected):
    q = Query(tuple(Atom(r, tuple(vs)) for r, vs in atoms))
    assert is_hierarchical_direct(q) is expected


def test_domain_order_ints_before_strings():
    assert sorted(["b", 3, "a", -1], key=domain_key) == [-1, 3, "a", "b"]
    with pytest.raises(TypeError):
        domain_key(True)


def test_database_set_semantics_and_ops():
    a, b, c = Fact("R", (1,)), Fact("R", (2,)), Fact("S", (1,))
    d = Database([a, b, a])
    assert len(d) == 2
    assert d | [c] == Database([a, b, c])
    assert d - [a] == Database([b])
    assert d & Database([a, c]) == Database([a])
    assert list(Database([c, b, a])) == [a, b, c]
    assert d.rows("R") == {(1,), (2,)}
    assert hash(d) == hash(Database([b, a]))


def test_check_schema():
    check_schema(Q1, [Fact("R", (1, 2))])
    with pytest.raises(SchemaMismatch):
        check_schema(Q1, [Fact("R", (1,))])
    with pytest.raises(SchemaMismatch):
        check_schema(Q1, [Fact("Z", (1,))])


def test_intro_example_counts():
    q, d, _ = intro_example()
    assert eval_bag_set(q, d) == 1
    assert eval_bag_set(q, d | [Fact("R", (1, 6)), Fact("T", (1, 2, 9))]) == 4
    assert eval_bag_set(q, d | [Fact("R", (1, 6)), Fact("R", (1, 7))]) == 3


def test_nullary_evaluation():
    q = Query((Atom("R", ()), Atom("S", ("A",))))
    assert eval_bag_set(q, Database([Fact("S", (1,))])) == 0
    assert eval_bag_set(q, Database([Fact("R", ()), Fact("S", (1,)), Fact("S", (2,))])) == 2


def test_satisfies_q_nh():
    q = q_nh()
    d = Database([Fact("R", (1,)), Fact("S", (1, 2))])
    assert not satisfies(q, d)
    assert satisfies(q, d | [Fact("T", (2,))])


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_satisfies_iff_positive_count(seed):
    rng = random.Random(seed)
    q = random_query(rng, max_atoms=3, max_vars=3)
    d = Database(random_facts(rng, q, 8, domain=(1, 2)))
    assert satisfies(q, d) == (eval_bag_set(q, d) > 0)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_bag_set_count_monotone(seed):
    rng = random.Random(seed)
    q = random_query(rng, max_atoms=3, max_vars=3)
    d = Database(random_facts(rng, q, 8, domain=(1, 2)))
    extra = Database(random_facts(rng, q, 3, domain=(1, 2)))
    assert eval_bag_set(q, d | extra) >= eval_bag_set(q, d)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_subset_counter_matches_direct_count(seed):
    rng = random.Random(seed)
    q = random_query(rng, max_atoms=3, max_vars=3)
    base = Database(random_facts(rng, q, 6, domain=(1, 2)))
    optional = [f for f in random_facts(rng, q, 6, domain=(1, 2)) if f not in base]
    count = bag_set_counter(q, base, optional)
    chosen = [i for i in range(len(optional)) if rng.random() < 0.5]
    assert count(chosen) == eval_bag_set(q, base | [optional[i] for i in chosen])
