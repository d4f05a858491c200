"""Matroid property problems under an independence oracle: exhaustive
references, simulated Grover-based query algorithms, and adversary bounds.
"""

from .adversary import (
    AdversaryParams,
    RelationKind,
    RelationSpec,
    build_relation,
    relation_params,
    theoretical_bound,
)
from .algorithms import (
    AmplificationConfig,
    DecisionResult,
    GirthResult,
    compute_girth,
    decide_loopless,
    decide_paving,
    decide_trivial,
    decide_uniform,
    greedy_rank,
)
from .enumeration import (
    INFINITY,
    bases,
    circuits,
    closure,
    flats,
    girth_bruteforce,
    hyperplanes,
    is_eulerian_bruteforce,
    rank_of,
)
from .grover import GroverOutcome, SearchSpace, grover_exact_sample, grover_search, grover_success_probability
from .matroid import (
    Kind,
    MatroidSpec,
    make_deleted_basis,
    make_paving_counterexample,
    make_uniform,
    oracle_of,
    verify_axioms,
)
from .oracle import CountingOracle, IndependenceOracle, QueryReport
from .subsets import CapacityError, ParameterError, colex_rank, colex_unrank

__version__ = "0.1.0"
