"""Degree-sequence lower bounds on the independence number of uniform hypergraphs."""

from .bounds import (
    BoundReport,
    average_degree_bound,
    caro_tuza,
    caro_tuza_simplified,
    caro_wei,
    check_family,
    compare_bounds,
    degree_sequence_bound,
    spencer_bound,
)
from .combinatorics import frac_binom, general_binom
from .errors import (
    CapacityError,
    EmptyLinkError,
    IndepboundError,
    InputError,
    UndefinedBoundError,
    WrongUniformityError,
)
from .hypergraph import (
    DegreeSequence,
    Hypergraph,
    LinkGraph,
    check_hgraph_inequality,
    exact_alpha,
    independent_sum,
    is_independent,
    is_linear,
    link_graph,
    load_hg,
)
from .permutation import (
    StarConfig,
    TrialBatch,
    enumerate_star_distribution,
    p_at_most,
    p_zero,
    q_at_least,
    run_trials,
    select_low_backward,
)

__version__ = "0.1.0"
