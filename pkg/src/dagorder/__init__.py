"""Online topological ordering and cycle detection for DAGs.

Library layout:

* ``core``       -- graph state, order bijection, affected regions
* ``ordlist``    -- the order-maintenance structure (dynamic priorities)
* ``algorithms`` -- the five insertion algorithms behind one interface
* ``randgraph``  -- seeded random DAG models and edge insertion sequences
* ``oracles``    -- brute-force ground truth and analytic overlays
* ``bench``      -- experiment driver (bench / verify / trace)
* ``cli``        -- command line entry point
"""

from .core import (
    ARRAY,
    LABEL,
    AffectedRegion,
    DagState,
    GraphError,
    NodeId,
    Seed,
    TopoOrder,
    add_edge_raw,
    affected_region,
    new_dag,
)
from .ordlist import OrderedList, OrderLabel, StaleHandleError
from .algorithms import (
    ACCEPTED,
    ALGORITHM_IDS,
    CYCLE,
    CoverReport,
    InsertionStats,
    InsertOutcome,
    ahrsz_insert,
    insert_sequence,
    kb_insert,
    make_state,
    mnr_insert,
    naive_insert,
    pk_insert,
)
from .randgraph import (
    ReisSequence,
    SplitMix64,
    derive_seed,
    gen_reis,
    mix64,
    sample_dag_gnm,
    sample_dag_gnp,
)
from .oracles import (
    CoverSearchLimitError,
    MinimalCoverResult,
    PhiTrace,
    check_valid_order,
    comparable_pairs,
    cost_ahrsz,
    cost_pk,
    count_invalidating,
    is_cover,
    max_degree,
    min_cover_bruteforce,
    predicted_phi,
)

__version__ = "0.1.0"
