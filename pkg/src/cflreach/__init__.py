"""CFL reachability solvers and fine-grained reduction gadgets."""
from .grammar import Grammar, dyck_grammar, lift_epsilon, parse_grammar, to_cnf
from .graph import LabeledGraph, SubdivisionGraph, WeightedLabeledGraph, layered_dag, parse_graph
from .pds import Pds, parse_pds, pds_reach, split_transitions
from .recognizer import cyk_recognize
from .solvers import (
    ReachabilityRelation,
    all_pairs_reach,
    bounded_path_reach,
    dag_all_pairs_reach,
    st_reach,
    weighted_all_pairs_reach,
    weighted_st_reach,
)

__all__ = [
    "Grammar", "dyck_grammar", "lift_epsilon", "parse_grammar", "to_cnf",
    "LabeledGraph", "SubdivisionGraph", "WeightedLabeledGraph", "layered_dag", "parse_graph",
    "Pds", "parse_pds", "pds_reach", "split_transitions",
    "cyk_recognize",
    "ReachabilityRelation", "all_pairs_reach", "bounded_path_reach", "dag_all_pairs_reach",
    "st_reach", "weighted_all_pairs_reach", "weighted_st_reach",
]
__version__ = "0.1.0"
