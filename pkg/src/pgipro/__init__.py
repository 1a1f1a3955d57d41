"""Interactive multi-objective route search.

An anytime objective-space decomposition produces Pareto-optimal routes one at
a time; a human (or simulated user) steers which region gets explored next. A
Gaussian-process pairwise-preference baseline, a benchmark harness, a CLI and
an HTTP session service round out the package.
"""

from .errors import PgIproError
from .ipro import enumerate_front, error_estimate, init_phase, update_partition
from .mograph import (
    MultiObjectiveGraph,
    Path,
    load_graph,
    path_value,
    reverse_lower_bounds,
    serialize_graph,
)
from .oracle import OracleOutcome, guidance_distance, solve_region
from .pareto import Region, filter_nondominated, pareto_dominates, strictly_below
from .session import (
    Session,
    SteerRequest,
    close_session,
    record_comparison,
    start_session,
    steer,
)
from .users import UserModel, choose_objective, compare, sample_user, utility

__all__ = [
    "MultiObjectiveGraph",
    "OracleOutcome",
    "Path",
    "PgIproError",
    "Region",
    "Session",
    "SteerRequest",
    "UserModel",
    "choose_objective",
    "close_session",
    "compare",
    "enumerate_front",
    "error_estimate",
    "filter_nondominated",
    "guidance_distance",
    "init_phase",
    "load_graph",
    "pareto_dominates",
    "path_value",
    "record_comparison",
    "reverse_lower_bounds",
    "sample_user",
    "serialize_graph",
    "solve_region",
    "start_session",
    "steer",
    "strictly_below",
    "update_partition",
    "utility",
]

__version__ = "0.1.0"
