"""Two-monoid laws for every carrier, plus the hand-computed operator values."""

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hierq.algebra import (
    FALSE,
    PROB,
    PROVENANCE,
    TRUE,
    BudgetMonoid,
    BudgetVector,
    SatMonoid,
    SatVector,
    bsm_plus,
    bsm_times,
    conj,
    disj,
    is_decomposable,
    leaf,
    prob_plus,
    prob_times,
    sat_plus,
    sat_times,
    support,
)
from hierq.errors import BoundMismatch, BudgetMismatch

LAW_CASES = settings(max_examples=1000, deadline=None)

# ---------------------------------------------------------------- strategies

probs = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@st.composite
def budget_vectors(draw, budget):
    steps = draw(st.lists(st.integers(0, 3), min_size=budget + 1, max_size=budget + 1))
    out, total = [], 0
    for s in steps:
        total += s
        out.append(total)
    return BudgetVector(tuple(out))


def sat_vectors(n_max):
    counts = st.lists(st.integers(0, 4), min_size=n_max + 1, max_size=n_max + 1)
    return st.builds(lambda t, f: SatVector(tuple(t), tuple(f)), counts, counts)


trees = st.recursive(
    st.one_of(st.sampled_from("abcde").map(leaf), st.just(TRUE), st.just(FALSE)),
    lambda kids: st.one_of(
        st.lists(kids, min_size=2, max_size=3).map(lambda xs: conj(*xs)),
        st.lists(kids, min_size=2, max_size=3).map(lambda xs: disj(*xs)),
    ),
    max_leaves=8,
)


def triples(budget_strategy):
    return st.tuples(budget_strategy, budget_strategy, budget_strategy)


@st.composite
def bsm_case(draw):
    budget = draw(st.integers(0, 4))
    return BudgetMonoid(budget), draw(triples(budget_vectors(budget)))


@st.composite
def sat_case(draw):
    n_max = draw(st.integers(0, 4))
    return SatMonoid(n_max), draw(triples(sat_vectors(n_max)))


prob_case = st.tuples(st.just(PROB), triples(probs))
prov_case = st.tuples(st.just(PROVENANCE), triples(trees))


def check_laws(m, x, y, z):
    eq = m.equal
    for op, unit in ((m.plus, m.zero), (m.times, m.one)):
        assert eq(op(x, y), op(y, x))
        assert eq(op(op(x, y), z), op(x, op(y, z)))
        assert eq(op(x, unit), x)
        assert eq(op(unit, x), x)
    assert eq(m.times(m.zero, m.zero), m.zero)


@LAW_CASES
@given(prob_case)
def test_probability_laws(case):
    m, (x, y, z) = case
    check_laws(m, x, y, z)


@LAW_CASES
@given(bsm_case())
def test_budget_laws(case):
    m, (x, y, z) = case
    check_laws(m, x, y, z)


@LAW_CASES
@given(sat_case())
def test_sat_laws(case):
    m, (x, y, z) = case
    check_laws(m, x, y, z)


@LAW_CASES
@given(prov_case)
def test_provenance_laws(case):
    m, (x, y, z) = case
    check_laws(m, x, y, z)


# ------------------------------------------------------ distributivity fails


def find_distributivity_witness(m, values):
    for a, b, c in product(values, repeat=3):
        if not m.equal(m.times(a, m.plus(b, c)), m.plus(m.times(a, b), m.times(a, c))):
            return a, b, c
    return None


def test_probability_not_distributive():
    assert find_distributivity_witness(PROB, [0.0, 0.25, 0.5, 1.0]) is not None


def test_budget_not_distributive():
    m = BudgetMonoid(2)
    values = [m.zero, m.one, m.star(), BudgetVector((0, 0, 1)), BudgetVector((1, 2, 2))]
    assert find_distributivity_witness(m, values) is not None


def test_sat_not_distributive():
    m = SatMonoid(2)
    assert find_distributivity_witness(m, [m.zero, m.one, m.star()]) is not None


# --------------------------------------------------------- operator values


def test_prob_operators():
    assert prob_plus(0.5, 0.5) == 0.75
    assert prob_plus(0.3, 0.0) == 0.3
    assert prob_plus(1.0, 0.3) == 1.0
    assert prob_times(0.5, 0.5) == 0.25
    assert prob_times(0.3, 1.0) == 0.3
    assert prob_times(0.3, 0.0) == 0.0


def test_prob_zero_is_exact():
    assert not PROB.is_zero(1e-12)
    assert PROB.is_zero(0.0)


def test_budget_operators():
    v = BudgetVector
    assert bsm_plus(v((0, 1, 1)), v((0, 1, 1))) == v((0, 1, 2))
    assert bsm_plus(v((1, 1, 1)), v((0, 1, 1))) == v((1, 2, 2))
    assert bsm_plus(v((1, 2, 3)), v.zeros(2)) == v((1, 2, 3))
    assert bsm_times(v.star(2), v.star(2)) == v((0, 0, 1))
    assert bsm_times(v((1, 2, 3)), v.ones(2)) == v((1, 2, 3))
    assert bsm_times(v.zeros(2), v.zeros(2)) == v.zeros(2)


def test_budget_vector_validation():
    with pytest.raises(ValueError):
        BudgetVector((2, 1))
    with pytest.raises(ValueError):
        BudgetVector(())
    with pytest.raises(BudgetMismatch):
        bsm_plus(BudgetVector.ones(1), BudgetVector.ones(2))


def test_sat_operators():
    star = SatVector.star(2)
    assert sat_plus(star, star).mass() == {(0, False): 1, (1, True): 2, (2, True): 1}
    assert sat_times(star, star).mass() == {(0, False): 1, (1, False): 2, (2, True): 1}
    assert sat_plus(star, SatVector.zero(2)) == star
    assert sat_times(star, SatVector.one(2)) == star
    assert sat_plus(SatVector.one(2), SatVector.one(2)) == SatVector.one(2)
    assert sat_times(SatVector.zero(2), SatVector.zero(2)) == SatVector.zero(2)


def test_sat_zero_does_not_annihilate():
    star = SatVector.star(1)
    assert sat_times(star, SatVector.zero(1)).mass() == {(0, False): 1, (1, False): 1}


def test_sat_bounds_checked():
    with pytest.raises(BoundMismatch):
        sat_plus(SatVector.zero(1), SatVector.zero(2))
    with pytest.raises(ValueError):
        SatVector.star(0)


def test_sat_truncation_at_n_max():
    # sizes past n_max are dropped
    x = SatVector((0, 1), (0, 0))
    assert sat_times(x, x) == SatVector((0, 0), (0, 0))


def test_provenance_operators():
    a, b, c = leaf("a"), leaf("b"), leaf("c")
    assert disj(a, b) == disj(b, a)
    assert disj(disj(a, b), c) == disj(a, b, c)
    assert len(disj(disj(a, b), c).children) == 3
    assert disj(a, FALSE) == a
    assert conj(a, TRUE) == a
    assert conj(FALSE, FALSE) == FALSE
    assert str(conj(a, b)) == "(a & b)"


def test_decomposability_and_support():
    a, b, c = leaf("a"), leaf("b"), leaf("c")
    assert is_decomposable(conj(a, disj(b, c)))
    assert not is_decomposable(disj(a, conj(a, b)))
    assert is_decomposable(TRUE)
    assert support(conj(a, disj(b, c))) == {"a", "b", "c"}
    assert support(FALSE) == frozenset()
    assert support(a) == {"a"}
