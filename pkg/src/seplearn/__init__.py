"""Learning graphs from separation (conditional independence) tests."""

from .errors import (
    BudgetExceeded,
    IncompleteComponents,
    InstanceTooLarge,
    InvalidDecomposition,
    InvalidGraph,
    InvalidParams,
    InvalidRegion,
    InvalidTest,
    InvalidVertex,
    ParseError,
    RegionBoundViolated,
    SepLearnError,
)
from .graph import Graph, connected_components, is_separated, kappa_max, kappa_pair, max_degree
from .harness import ExperimentConfig, Report, parse_graph, run_experiment, write_report
from .learner_tw import TwLearnerReport, learn_decomposition, learn_tw
from .naive import LearnerReport, learn_naive, verify_size_lower_bound
from .oracle import Answer, Budget, IndependenceTest, Oracle, OracleStats, make_adversary_oracle, make_exact_oracle
from .treewidth import TreeDecomposition, exact_treewidth, validate_decomposition

__version__ = "0.1.0"

__all__ = [
    "Answer",
    "Budget",
    "BudgetExceeded",
    "ExperimentConfig",
    "Graph",
    "IncompleteComponents",
    "IndependenceTest",
    "InstanceTooLarge",
    "InvalidDecomposition",
    "InvalidGraph",
    "InvalidParams",
    "InvalidRegion",
    "InvalidTest",
    "InvalidVertex",
    "LearnerReport",
    "Oracle",
    "OracleStats",
    "ParseError",
    "RegionBoundViolated",
    "Report",
    "SepLearnError",
    "TreeDecomposition",
    "TwLearnerReport",
    "connected_components",
    "exact_treewidth",
    "is_separated",
    "kappa_max",
    "kappa_pair",
    "learn_decomposition",
    "learn_naive",
    "learn_tw",
    "make_adversary_oracle",
    "make_exact_oracle",
    "max_degree",
    "parse_graph",
    "run_experiment",
    "validate_decomposition",
    "verify_size_lower_bound",
    "write_report",
]
