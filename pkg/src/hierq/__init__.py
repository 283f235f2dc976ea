"""Unified evaluation of hierarchical self-join-free Boolean conjunctive
queries over pluggable 2-monoids."""

from .applications import (
    BsmInstance,
    ProbabilisticDatabase,
    ShapleyInstance,
    bag_set_maximize,
    bsm_decide,
    count_sat,
    prob_query_eval,
    shapley_all,
    shapley_value,
)
from .engine import (
    AnnotatedDatabase,
    RunStats,
    is_hierarchical,
    plan_elimination,
    run_algorithm,
    run_with_provenance,
)
from .hardness import Graph, bcbs_brute, bcbs_reduce
from .parsing import parse_facts_file, parse_graph_file, parse_query_file
from .query import (
    Atom,
    Database,
    Fact,
    Query,
    eval_bag_set,
    is_hierarchical_direct,
    satisfies,
    validate_query,
)

__all__ = [
    "AnnotatedDatabase",
    "Atom",
    "BsmInstance",
    "Database",
    "Fact",
    "Graph",
    "ProbabilisticDatabase",
    "Query",
    "RunStats",
    "ShapleyInstance",
    "bag_set_maximize",
    "bcbs_brute",
    "bcbs_reduce",
    "bsm_decide",
    "count_sat",
    "eval_bag_set",
    "is_hierarchical",
    "is_hierarchical_direct",
    "parse_facts_file",
    "parse_graph_file",
    "parse_query_file",
    "plan_elimination",
    "prob_query_eval",
    "run_algorithm",
    "run_with_provenance",
    "satisfies",
    "shapley_all",
    "shapley_value",
    "validate_query",
]
