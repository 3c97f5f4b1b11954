"""R-graphs, R-cycles and the free-group and group-ring machinery around them."""

from .cycles import (
    ColouringPartition,
    RCycle,
    brute_force_r_cycle,
    colouring_partition,
    euler_criterion,
    find_r_cycle_rcolouring,
    find_r_cycle_uc,
    has_r_cycle_rsimple,
    induced_simple_graph,
    is_colouring,
    is_r_colouring,
    is_r_simple,
    mx_and_j,
    quotient_graph,
    r_components,
    satisfies_sc,
    satisfies_uc,
    spanning_forest,
    u_family,
    validate_r_cycle,
)
from .errors import BudgetExceeded, GraphError, PreconditionError
from .freegroup import FreeGroup, FreeWord, make_z_family, parse_word, verify_z_property_i, verify_z_property_ii
from .graph import (
    RGraph,
    RSubgraph,
    SimpleGraph,
    Verdict,
    check_condition_r,
    check_condition_r_doubleprime,
    check_condition_r_prime,
    components,
    is_proper,
    isolated_set,
    r_neighbour_set,
    r_subgraph,
)
from .groupring import (
    EpsilonSpec,
    RingElement,
    build_epsilon,
    build_equality_rgraph,
    classify_mt,
    expand_rt,
    make_epsilon_spec,
    ring_add,
    ring_mul,
    verify_r_not_one,
)
from .io import LoadError, dumps_graph, load_graph, loads_graph, to_dot

__version__ = "0.1.0"
