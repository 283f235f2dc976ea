"""Exponential-time reference implementations.

None of these touch the elimination engine or the carrier operations: they
enumerate worlds, repairs, subsets or permutations directly.  Size caps are
explicit; going over one raises :class:`InstanceTooLarge` instead of
silently truncating.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial
from typing import Mapping

from .algebra import BudgetVector, ProvTree, SatVector, is_decomposable, support
from .algebra.provenance import AND, FALSE_, OR, SYM, TRUE_
from .applications import BsmInstance, ProbabilisticDatabase, ShapleyInstance
from .errors import FactNotEndogenous, InstanceTooLarge, NotDecomposable
from .query import Database, Fact, Query, bag_set_counter, satisfies

PROB_CAP = 20
BSM_CAP = 16
SHARP_SAT_CAP = 18
SHAPLEY_CAP = 8
PHI_CAP = 20


def _guard(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise InstanceTooLarge(size, cap, what)


def oracle_prob(q: Query, pd: ProbabilisticDatabase, cap: int = PROB_CAP) -> float:
    """Sum of world probabilities over all worlds where ``q`` holds."""
    facts = sorted(pd.facts)
    _guard(len(facts), cap, "probabilistic database")
    total = 0.0
    for keep in product((False, True), repeat=len(facts)):
        weight = 1.0
        for f, k in zip(facts, keep):
            p = pd.facts[f]
            weight *= p if k else 1.0 - p
        if weight and satisfies(q, Database(f for f, k in zip(facts, keep) if k)):
            total += weight
    return total


def oracle_bsm(q: Query, inst: BsmInstance, i: int, cap: int = BSM_CAP) -> int:
    """Best bag-set count over repairs that insert at most ``i`` facts.

    Conjunctive queries are monotone, so only the largest affordable
    insertions need to be tried.
    """
    extra = sorted(inst.insertable)
    _guard(len(extra), cap, "repair database")
    count = bag_set_counter(q, inst.d, extra)
    size = min(i, len(extra))
    return max(count(added) for added in combinations(range(len(extra)), size))


def oracle_sharp_sat(
    q: Query, inst: ShapleyInstance, k: int, cap: int = SHARP_SAT_CAP
) -> int:
    endo = sorted(inst.d_endo)
    _guard(len(endo), cap, "endogenous database")
    if k > len(endo):
        return 0
    return sum(1 for sub in combinations(endo, k) if satisfies(q, inst.d_exo | sub))


def _shapley_by_permutation(
    q: Query, inst: ShapleyInstance, targets: list[Fact], cap: int
) -> dict[Fact, Fraction]:
    endo = sorted(inst.d_endo)
    _guard(len(endo), cap, "endogenous database")
    memo: dict[frozenset, bool] = {}

    def holds(prefix: frozenset) -> bool:
        if prefix not in memo:
            memo[prefix] = satisfies(q, inst.d_exo | prefix)
        return memo[prefix]

    flips = {f: 0 for f in targets}
    for order in permutations(endo):
        before: frozenset = frozenset()
        was = holds(before)
        for f in order:
            after = before | {f}
            now = holds(after)
            if f in flips:
                flips[f] += int(now) - int(was)
            before, was = after, now
    n_fact = factorial(len(endo))
    return {f: Fraction(c, n_fact) for f, c in flips.items()}


def oracle_shapley(
    q: Query, inst: ShapleyInstance, f: Fact, cap: int = SHAPLEY_CAP
) -> Fraction:
    """Average marginal contribution of ``f`` over all insertion orders."""
    if f not in inst.d_endo:
        raise FactNotEndogenous(f"{f} is not an endogenous fact")
    return _shapley_by_permutation(q, inst, [f], cap)[f]


def oracle_shapley_all(
    q: Query, inst: ShapleyInstance, cap: int = SHAPLEY_CAP
) -> dict[Fact, Fraction]:
    """Every endogenous fact's value from one pass over the permutations."""
    return _shapley_by_permutation(q, inst, sorted(inst.d_endo), cap)


# ------------------------------------------------------------- phi mapping


def _truth(tree: ProvTree, present: frozenset[str]) -> bool:
    if tree.kind == SYM:
        return tree.symbol in present
    if tree.kind == TRUE_:
        return True
    if tree.kind == FALSE_:
        return False
    if tree.kind == AND:
        return all(_truth(c, present) for c in tree.children)
    return any(_truth(c, present) for c in tree.children)


def _multiplicity(tree: ProvTree, present: frozenset[str]) -> int:
    """Bag-set count of the formula: Or adds, And multiplies."""
    if tree.kind == SYM:
        return int(tree.symbol in present)
    if tree.kind == TRUE_:
        return 1
    if tree.kind == FALSE_:
        return 0
    vals = [_multiplicity(c, present) for c in tree.children]
    if tree.kind == OR:
        return sum(vals)
    out = 1
    for v in vals:
        out *= v
    return out


def _subsets(items: list[str]):
    for r in range(len(items) + 1):
        for sub in combinations(items, r):
            yield sub


def phi_prob(
    tree: ProvTree, probs: Mapping[str, float], cap: int = PHI_CAP
) -> float:
    """Probability that the tree's formula is true, leaves independent."""
    if not is_decomposable(tree):
        raise NotDecomposable(str(tree))
    syms = sorted(support(tree))
    _guard(len(syms), cap, "tree support")
    total = 0.0
    for sub in _subsets(syms):
        present = frozenset(sub)
        if _truth(tree, present):
            w = 1.0
            for s in syms:
                w *= probs[s] if s in present else 1.0 - probs[s]
            total += w
    return total


def phi_bsm(
    tree: ProvTree,
    in_database: frozenset[str],
    in_repair: frozenset[str],
    budget: int,
    cap: int = PHI_CAP,
) -> BudgetVector:
    """Per-budget best multiplicity of the formula over leaf insertions.

    Leaves in ``in_database`` are present for free; leaves only in
    ``in_repair`` cost one unit each; every other leaf is absent.
    """
    if not is_decomposable(tree):
        raise NotDecomposable(str(tree))
    syms = support(tree)
    base = syms & in_database
    optional = sorted((syms & in_repair) - base)
    _guard(len(optional), cap, "tree repair leaves")
    best = [0] * (budget + 1)
    for sub in _subsets(optional):
        cost = len(sub)
        if cost > budget:
            continue
        val = _multiplicity(tree, frozenset(base.union(sub)))
        best[cost] = max(best[cost], val)
    for i in range(1, budget + 1):
        best[i] = max(best[i], best[i - 1])
    return BudgetVector(tuple(best))


def phi_sat(
    tree: ProvTree,
    exogenous: frozenset[str],
    endogenous: frozenset[str],
    n_max: int,
    cap: int = PHI_CAP,
) -> SatVector:
    """#Sat vector of the formula over its own endogenous leaves."""
    if not is_decomposable(tree):
        raise NotDecomposable(str(tree))
    syms = support(tree)
    fixed = syms & exogenous
    free = sorted((syms & endogenous) - fixed)
    _guard(len(free), cap, "tree endogenous leaves")
    t = [0] * (n_max + 1)
    f = [0] * (n_max + 1)
    for sub in _subsets(free):
        if len(sub) > n_max:
            continue
        if _truth(tree, frozenset(fixed.union(sub))):
            t[len(sub)] += 1
        else:
            f[len(sub)] += 1
    return SatVector(tuple(t), tuple(f))


def phi_eval(carrier: str, tree: ProvTree, context: Mapping):
    """Dispatch on ``carrier`` in {"prob", "bsm", "sat"}.

    ``context`` keys: prob -> ``probs``; bsm -> ``in_database``,
    ``in_repair``, ``budget``; sat -> ``exogenous``, ``endogenous``,
    ``n_max``.  ``cap`` is optional for all three.
    """
    cap = context.get("cap", PHI_CAP)
    if carrier == "prob":
        return phi_prob(tree, context["probs"], cap)
    if carrier == "bsm":
        return phi_bsm(
            tree,
            frozenset(context["in_database"]),
            frozenset(context["in_repair"]),
            context["budget"],
            cap,
        )
    if carrier == "sat":
        return phi_sat(
            tree,
            frozenset(context["exogenous"]),
            frozenset(context["endogenous"]),
            context["n_max"],
            cap,
        )
    raise ValueError(f"unknown carrier {carrier!r}")
