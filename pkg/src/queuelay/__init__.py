"""Queue layouts with bounded locality."""

from .bounds import BoundsReport, mad, mad_exhaustive, nash_williams_arboricity, queue_edge_bound_check, thm2_bounds
from .constructors import StarPartition, bfs_tree_layout, degeneracy_order, stars_to_queues, star_queue_layout
from .errors import *  # noqa: F401,F403
from .graph import (
    ConstructionSequence,
    EdgeDepthMap,
    Graph,
    Step,
    edge,
    expand,
    fig3_witness,
    halfclique_family,
    mary_ktree,
    random_ktree,
    truncate_mary,
)
from .layout import (
    LinearOrder,
    LocalityViolation,
    Ok,
    QueueLayout,
    RainbowViolation,
    RainbowWitness,
    below,
    crosses,
    max_rainbow,
    nests,
    outside,
    span,
    validate_layout,
)
from .solver import SolveResult, exact_lqn, exact_qn, min_locality_for_order, min_queues_for_order

__version__ = "0.1.0"
