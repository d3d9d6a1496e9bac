"""Five online topological-ordering algorithms behind one insertion interface.

Every algorithm takes (dag, order, u, v) for a pending edge u -> v, returns
an InsertOutcome, and guarantees:

* accepted        -> the edge is in the dag and the order is valid for it;
* cycle_detected  -> dag and order are exactly as before the call.

``naive`` re-sorts from scratch, ``mnr`` shifts a priority interval, ``pk``
reorders exactly the affected region via two bounded DFS passes (these
three need an array-backed order), while ``ahrsz`` and ``kb`` mark a cover
via two balanced priority-queue frontiers and relabel only the marked
nodes through the order-maintenance structure (label-backed order).

Cycle safety for the frontier algorithms is layered: the frontier walk
detects most collisions as they happen, and before anything mutates, the
relabel feasibility pass (strict lower/upper bound cells per marked node)
rejects any insertion whose constraints cannot be satisfied, which is
exactly the cycle case.  Rejected edges therefore never touch state.

Instrumentation: on invalidating insertions every algorithm reports the
true affected-region sizes (recomputed from its definition against the
pre-insertion state); the frontier algorithms additionally report their
marked cover.  ``work_units`` counts adjacency scans plus priority
structure operations (heap pushes/pops, label inserts/deletes, rank
writes) plus an n*log2(n) proxy per sort; for pk the full degree sum of
the affected region is charged, matching its per-insertion cost model.
The instrumentation DFS is not part of work_units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from heapq import heappop, heappush
from time import perf_counter_ns

from .core import (
    ARRAY,
    LABEL,
    AffectedRegion,
    DagState,
    GraphError,
    TopoOrder,
    add_edge_raw,
    affected_region,
    remove_edge_raw,
)

ACCEPTED = "accepted"
CYCLE = "cycle_detected"

ALGORITHM_IDS = ("naive", "mnr", "pk", "ahrsz", "kb")


@dataclass(slots=True)
class InsertionStats:
    invalidating: bool
    delta_nodes: int
    delta_edges: int
    cover_nodes: int
    cover_edges: int
    cover_measure: int
    work_units: int
    elapsed: int


@dataclass(slots=True)
class CoverReport:
    marked: set
    forward_order: list
    backward_order: list


@dataclass(slots=True)
class InsertOutcome:
    status: str
    stats: InsertionStats | None
    witness: tuple | None
    cover: CoverReport | None = None

    @property
    def accepted(self) -> bool:
        return self.status == ACCEPTED


def order_mode_for(algorithm: str) -> str:
    if algorithm in ("naive", "mnr", "pk"):
        return ARRAY
    if algorithm in ("ahrsz", "kb"):
        return LABEL
    raise ValueError(f"unknown algorithm {algorithm!r}")


def make_state(n: int, algorithm: str) -> tuple[DagState, TopoOrder]:
    """Fresh dag plus an identity order in the backend *algorithm* needs."""
    return DagState(n), TopoOrder(n, order_mode_for(algorithm))


def _require_mode(order: TopoOrder, mode: str, algorithm: str):
    if order.mode != mode:
        raise ValueError(f"{algorithm} needs a {mode}-backed order, got {order.mode}")


def _check_nodes(dag: DagState, u: int, v: int):
    if u == v:
        raise GraphError(f"self-loop ({u},{v}) rejected")
    if not (0 <= u < dag.n and 0 <= v < dag.n):
        raise GraphError(f"edge ({u},{v}) out of range for n={dag.n}")


def _zero_accept(t0: int) -> InsertOutcome:
    stats = InsertionStats(False, 0, 0, 0, 0, 0, 0, perf_counter_ns() - t0)
    return InsertOutcome(ACCEPTED, stats, None)


def _sort_work(k: int) -> int:
    return k * max(1, math.ceil(math.log2(k))) if k > 1 else k


# ---------------------------------------------------------------------------
# naive: offline re-sort per insertion
# ---------------------------------------------------------------------------

def naive_insert(dag: DagState, order: TopoOrder, u: int, v: int) -> InsertOutcome:
    """Add the edge, redo a DFS topological sort, undo the edge on a cycle."""
    t0 = perf_counter_ns()
    _require_mode(order, ARRAY, "naive")
    _check_nodes(dag, u, v)
    invalidating = order.rank[u] > order.rank[v]
    region = affected_region(dag, order, u, v) if invalidating else None

    add_edge_raw(dag, u, v)
    n = dag.n
    out_adj = dag.out_adj
    color = bytearray(n)  # 0 unseen, 1 in progress, 2 finished
    postorder = []
    work = 0
    cyclic = False
    for root in range(n):
        if color[root]:
            continue
        color[root] = 1
        stack = [(root, 0)]
        while stack:
            x, i = stack.pop()
            succ = out_adj[x]
            advanced = False
            while i < len(succ):
                w = succ[i]
                i += 1
                work += 1
                if color[w] == 0:
                    stack.append((x, i))
                    stack.append((w, 0))
                    color[w] = 1
                    advanced = True
                    break
                if color[w] == 1:
                    cyclic = True
                    break
            if cyclic:
                break
            if not advanced:
                color[x] = 2
                postorder.append(x)
        if cyclic:
            break
    if cyclic:
        remove_edge_raw(dag, u, v)
        return InsertOutcome(CYCLE, None, (u, v))

    rank = order.rank
    node_at = order.node_at
    r = n
    for x in postorder:  # last finished node gets rank 1
        rank[x] = r
        node_at[r - 1] = x
        r -= 1
    stats = InsertionStats(
        invalidating,
        region.delta_nodes if region else 0,
        region.delta_edges if region else 0,
        0,
        0,
        0,
        work + n,
        perf_counter_ns() - t0,
    )
    return InsertOutcome(ACCEPTED, stats, None)


# ---------------------------------------------------------------------------
# mnr: shift the priority interval between v and u
# ---------------------------------------------------------------------------

def mnr_insert(dag: DagState, order: TopoOrder, u: int, v: int) -> InsertOutcome:
    """Move everything reachable from v (within the window) right after u."""
    t0 = perf_counter_ns()
    _require_mode(order, ARRAY, "mnr")
    _check_nodes(dag, u, v)
    rank = order.rank
    ku = rank[u]
    kv = rank[v]
    if ku < kv:
        add_edge_raw(dag, u, v)
        return _zero_accept(t0)

    out_adj = dag.out_adj
    reached = {v}
    stack = [v]
    work = 0
    while stack:
        x = stack.pop()
        for w in out_adj[x]:
            work += 1
            if w not in reached and rank[w] <= ku:
                if w == u:
                    return InsertOutcome(CYCLE, None, (u, v))
                reached.add(w)
                stack.append(w)

    region = affected_region(dag, order, u, v)
    node_at = order.node_at
    window = node_at[kv - 1 : ku]
    shifted = [x for x in window if x not in reached] + [
        x for x in window if x in reached
    ]
    for offset, x in enumerate(shifted):
        rank[x] = kv + offset
        node_at[kv - 1 + offset] = x
    work += len(shifted)
    add_edge_raw(dag, u, v)
    stats = InsertionStats(
        True,
        region.delta_nodes,
        region.delta_edges,
        0,
        0,
        0,
        work,
        perf_counter_ns() - t0,
    )
    return InsertOutcome(ACCEPTED, stats, None)


# ---------------------------------------------------------------------------
# pk: two bounded DFS passes, then pool and reassign the region's slots
# ---------------------------------------------------------------------------

def pk_insert(dag: DagState, order: TopoOrder, u: int, v: int) -> InsertOutcome:
    t0 = perf_counter_ns()
    _require_mode(order, ARRAY, "pk")
    _check_nodes(dag, u, v)
    rank = order.rank
    ku = rank[u]
    kv = rank[v]
    if ku < kv:
        add_edge_raw(dag, u, v)
        return _zero_accept(t0)

    out_adj = dag.out_adj
    in_adj = dag.in_adj
    traversed = 0
    r_f = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for w in out_adj[x]:
            if rank[w] <= ku:
                if w == u:
                    return InsertOutcome(CYCLE, None, (u, v))
                traversed += 1
                if w not in r_f:
                    r_f.add(w)
                    stack.append(w)

    r_b = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for w in in_adj[x]:
            if rank[w] >= kv:
                traversed += 1
                if w not in r_b:
                    r_b.add(w)
                    stack.append(w)

    delta_nodes = len(r_f) + len(r_b)
    delta_edges = traversed
    scans = sum(len(out_adj[x]) for x in r_f) + sum(len(in_adj[x]) for x in r_b)

    b_sorted = sorted(r_b, key=rank.__getitem__)
    f_sorted = sorted(r_f, key=rank.__getitem__)
    slots = sorted(rank[x] for x in r_b | r_f)
    node_at = order.node_at
    for slot, x in zip(slots, b_sorted + f_sorted):
        rank[x] = slot
        node_at[slot - 1] = x
    add_edge_raw(dag, u, v)

    work = scans + _sort_work(delta_nodes) + delta_nodes
    stats = InsertionStats(
        True,
        delta_nodes,
        delta_edges,
        delta_nodes,
        delta_edges,
        delta_nodes + delta_edges,
        work,
        perf_counter_ns() - t0,
    )
    cover = CoverReport(r_f | r_b, f_sorted, b_sorted)
    return InsertOutcome(ACCEPTED, stats, None, cover)


# ---------------------------------------------------------------------------
# ahrsz / kb: balanced dual-frontier discovery + label relabelling
# ---------------------------------------------------------------------------

class _CycleFound(Exception):
    pass


def _discover(dag: DagState, order: TopoOrder, u: int, v: int, kb_weights: bool):
    """Mark a cover by moving two frontiers toward each other.

    The forward frontier grows from v through out-edges, smallest priority
    first; the backward frontier grows from u through in-edges, largest
    first.  Whichever side has seen fewer edges is extended next (full
    degree of each marked node for the balanced variant, out-degree
    forward / in-degree backward for the kb variant; ties extend forward).
    The walk stops when the frontiers' next candidates pass each other or
    a side runs out of candidates.

    Raises _CycleFound on frontier collisions; collisions that slip past
    these checks are caught by the relabel feasibility test.

    Returns (fwd_marks, back_marks, fwd_witness, back_witness, exhausted,
    work): the mark lists in pop order, the first unvisited node beyond
    each frontier (None for an exhausted side), and which sides ran out of
    candidates ("", "f", "b", or "fb").  An exhausted side has visited its
    whole reachable region, so it is a cover on its own; callers drop the
    other side's marks then.
    """
    cells = order.cells
    out_adj, in_adj = dag.out_adj, dag.in_adj
    ku = cells[u].tag
    kv = cells[v].tag
    fheap = [(kv, v)]
    bheap = [(-ku, u)]
    fmark: set[int] = set()
    bmark: set[int] = set()
    forder: list[int] = []
    border: list[int] = []
    fcount = bcount = 0
    work = 0

    while True:
        while fheap and fheap[0][1] in fmark:
            heappop(fheap)
            work += 1
        while bheap and bheap[0][1] in bmark:
            heappop(bheap)
            work += 1
        if not fheap or not bheap:
            fwit = fheap[0][1] if fheap else None
            bwit = bheap[0][1] if bheap else None
            exhausted = ("" if fheap else "f") + ("" if bheap else "b")
            return forder, border, fwit, bwit, exhausted, work
        fk, fw = fheap[0]
        nbk, bw = bheap[0]
        bk = -nbk
        if fw in bmark or bw in fmark or fk == bk:
            raise _CycleFound
        if fk > bk:
            return forder, border, fw, bw, "", work
        if fcount <= bcount:
            heappop(fheap)
            work += 1
            if fw == u:
                raise _CycleFound
            fmark.add(fw)
            forder.append(fw)
            fcount += len(out_adj[fw]) if kb_weights else dag.degree(fw)
            for z in out_adj[fw]:
                work += 1
                if cells[z].tag <= ku:
                    if z in bmark:
                        raise _CycleFound
                    if z not in fmark:
                        heappush(fheap, (cells[z].tag, z))
                        work += 1
        else:
            heappop(bheap)
            work += 1
            if bw == v:
                raise _CycleFound
            bmark.add(bw)
            border.append(bw)
            bcount += len(in_adj[bw]) if kb_weights else dag.degree(bw)
            for z in in_adj[bw]:
                work += 1
                if cells[z].tag >= kv:
                    if z in fmark:
                        raise _CycleFound
                    if z not in bmark:
                        heappush(bheap, (-cells[z].tag, z))
                        work += 1


def _choose_cover(dag, u, v, forder, border, exhausted):
    """Pick the marked cover after discovery.

    A frontier that exhausted its region visited everything on its side,
    so those marks alone cover every misordered pair; keeping the other
    side would only inflate the measure.  When both sides completed, take
    the cheaper one (ties toward forward).  A walk that stopped at the
    frontier-passing condition needs both sides.
    """
    if exhausted == "":
        return forder, border
    if exhausted == "fb":
        side_cost = lambda nodes: len(nodes) + sum(
            dag.degree(x) + (x == u) + (x == v) for x in nodes
        )
        if side_cost(forder) <= side_cost(border):
            return forder, []
        return [], border
    if exhausted == "f":
        return forder, []
    return [], border


def _topo_of_marked(dag: DagState, marked: set, u: int, v: int) -> list[int] | None:
    """Topological order of the marked set under dag edges plus u->v.

    None if that subgraph is cyclic (the pending edge closes a cycle
    entirely inside the marked set).
    """
    succs = {x: [] for x in marked}
    indeg = dict.fromkeys(marked, 0)
    for x in marked:
        for z in dag.out_adj[x]:
            if z in succs:
                succs[x].append(z)
                indeg[z] += 1
    if u in succs and v in succs:
        succs[u].append(v)
        indeg[v] += 1
    stack = [x for x in marked if indeg[x] == 0]
    out = []
    while stack:
        x = stack.pop()
        out.append(x)
        for z in succs[x]:
            indeg[z] -= 1
            if indeg[z] == 0:
                stack.append(z)
    return out if len(out) == len(marked) else None


def _relabel_bounds(dag, order, marked, topo, u, v, start_clamp, end_clamp):
    """Strict bound cells per marked node; None when no valid relabel exists.

    The upper-bound pass walks the marked nodes in reverse topological
    order, the lower-bound pass forward; each node's bounds come from its
    unmarked neighbors' cells, its marked neighbors' bounds, and the cells
    just outside the priority window (keeping the relabel local).  The
    pending edge u->v contributes bounds like any other edge.  A node whose
    lower bound reaches its upper bound proves the pending edge closes a
    cycle (possibly through unmarked territory), so None means reject.
    """
    cells = order.cells
    ceil: dict[int, object] = {}
    for x in reversed(topo):
        best = end_clamp
        for z in dag.out_adj[x]:
            c = ceil.get(z) or cells[z]
            if c.tag < best.tag:
                best = c
        if x == u:
            c = ceil.get(v) or cells[v]
            if c.tag < best.tag:
                best = c
        ceil[x] = best
    lo: dict[int, object] = {}
    for x in topo:
        best = start_clamp
        for z in dag.in_adj[x]:
            c = lo.get(z) or cells[z]
            if c.tag > best.tag:
                best = c
        if x == v:
            c = lo.get(u) or cells[u]
            if c.tag > best.tag:
                best = c
        if best.tag >= ceil[x].tag:
            return None
        lo[x] = best
    return ceil


def _cover_stats(region: AffectedRegion, cover_nodes: int, cover_edges: int,
                 work: int, t0: int) -> InsertionStats:
    return InsertionStats(
        True,
        region.delta_nodes,
        region.delta_edges,
        cover_nodes,
        cover_edges,
        cover_nodes + cover_edges,
        work,
        perf_counter_ns() - t0,
    )


def ahrsz_insert(dag: DagState, order: TopoOrder, u: int, v: int) -> InsertOutcome:
    """Balanced-frontier discovery, then two-pass bound relabelling.

    Fresh labels are created between each marked node's bound anchors,
    processed in topological order of the marked subgraph; marked nodes
    with identical (lower, upper) bound windows chain off a shared anchor,
    so their labels pack together.
    """
    t0 = perf_counter_ns()
    _require_mode(order, LABEL, "ahrsz")
    _check_nodes(dag, u, v)
    cells = order.cells
    if cells[u].tag < cells[v].tag:
        add_edge_raw(dag, u, v)
        return _zero_accept(t0)

    try:
        forder, border, _, _, exhausted, work = _discover(
            dag, order, u, v, kb_weights=False
        )
    except _CycleFound:
        return InsertOutcome(CYCLE, None, (u, v))
    forder, border = _choose_cover(dag, u, v, forder, border, exhausted)
    marked = set(forder) | set(border)
    topo = _topo_of_marked(dag, marked, u, v)
    if topo is None:
        return InsertOutcome(CYCLE, None, (u, v))
    start_clamp = cells[v].prev  # cell just below the window (maybe head)
    end_clamp = cells[u].next    # cell just above it (maybe tail)
    ceil = _relabel_bounds(dag, order, marked, topo, u, v, start_clamp, end_clamp)
    if ceil is None:
        return InsertOutcome(CYCLE, None, (u, v))

    # Accepted: collect pre-insertion measures, then mutate.  Cover edge
    # counts are incident degrees in the graph including the pending edge.
    region = affected_region(dag, order, u, v)
    cover_edges = sum(dag.degree(x) for x in marked) + (u in marked) + (v in marked)

    olist = order.olist
    in_adj = dag.in_adj
    for x in marked:
        olist.delete(cells[x])
    chain: dict[tuple, object] = {}
    for x in topo:
        floor = start_clamp
        for z in in_adj[x]:
            c = cells[z]  # marked predecessors already carry their new cell
            if c.tag > floor.tag:
                floor = c
        if x == v:
            c = cells[u]
            if c.tag > floor.tag:
                floor = c
        window = (floor, ceil[x])
        anchor = chain.get(window, floor)
        cells[x] = olist._insert_after_cell(anchor, x)
        chain[window] = cells[x]
    work += 2 * len(marked)
    add_edge_raw(dag, u, v)

    stats = _cover_stats(region, len(marked), cover_edges, work, t0)
    return InsertOutcome(ACCEPTED, stats, None, CoverReport(marked, forder, border))


def kb_insert(dag: DagState, order: TopoOrder, u: int, v: int) -> InsertOutcome:
    """Degree-split frontier discovery, then block reinsertion.

    Forward-visited nodes are deleted and reinserted, in their old relative
    order, just below the first unvisited node still reachable beyond the
    forward frontier (or the top of the window); backward-visited nodes go
    just above the last unvisited node beyond the backward frontier (or
    the bottom of the window).  Unvisited nodes keep their labels.
    """
    t0 = perf_counter_ns()
    _require_mode(order, LABEL, "kb")
    _check_nodes(dag, u, v)
    cells = order.cells
    if cells[u].tag < cells[v].tag:
        add_edge_raw(dag, u, v)
        return _zero_accept(t0)

    try:
        forder, border, fwit, bwit, exhausted, work = _discover(
            dag, order, u, v, kb_weights=True
        )
    except _CycleFound:
        return InsertOutcome(CYCLE, None, (u, v))
    forder, border = _choose_cover(dag, u, v, forder, border, exhausted)
    marked = set(forder) | set(border)
    topo = _topo_of_marked(dag, marked, u, v)
    if topo is None:
        return InsertOutcome(CYCLE, None, (u, v))
    start_clamp = cells[v].prev
    end_clamp = cells[u].next
    if _relabel_bounds(dag, order, marked, topo, u, v, start_clamp, end_clamp) is None:
        return InsertOutcome(CYCLE, None, (u, v))

    region = affected_region(dag, order, u, v)
    cover_edges = sum(dag.degree(x) for x in marked) + (u in marked) + (v in marked)

    # Placement.  With both sides in play the backward block goes just above
    # the last unvisited backward node and the forward block just below the
    # first unvisited forward one.  A lone complete forward side moves in a
    # block just above u; a lone complete backward side just below v.  The
    # anchors are never marked (witnesses are unvisited; u, v and the
    # window edges fall outside the marked set in the cases using them),
    # so they survive the deletions.
    fwd_block = sorted(forder, key=lambda x: cells[x].tag)
    back_block = sorted(border, key=lambda x: cells[x].tag)
    b_anchor = cells[bwit] if bwit is not None else start_clamp
    f_cell = cells[fwit] if fwit is not None else end_clamp
    above_u = cells[u] if not border else None  # lone forward side goes above u
    olist = order.olist
    for x in marked:
        olist.delete(cells[x])
    anchor = b_anchor
    for x in back_block:
        cells[x] = olist._insert_after_cell(anchor, x)
        anchor = cells[x]
    if fwd_block:
        # resolved only now: the back block may have grown below the witness
        anchor = above_u if above_u is not None else f_cell.prev
        for x in fwd_block:
            cells[x] = olist._insert_after_cell(anchor, x)
            anchor = cells[x]
    work += 2 * len(marked)
    add_edge_raw(dag, u, v)

    stats = _cover_stats(region, len(marked), cover_edges, work, t0)
    return InsertOutcome(ACCEPTED, stats, None, CoverReport(marked, forder, border))


INSERT_FUNCS = {
    "naive": naive_insert,
    "mnr": mnr_insert,
    "pk": pk_insert,
    "ahrsz": ahrsz_insert,
    "kb": kb_insert,
}


def insert_sequence(
    dag: DagState,
    order: TopoOrder,
    algorithm: str,
    edges,
    sink=None,
) -> list[InsertOutcome] | None:
    """Insert edges in order with one algorithm, never stopping.

    Cycle edges are skipped and reported in their outcome; the dag stays
    acyclic throughout.  With ``sink`` given, outcomes are fed to it one at
    a time instead of being accumulated (for long runs), and None is
    returned.
    """
    if algorithm not in INSERT_FUNCS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    insert = INSERT_FUNCS[algorithm]
    _require_mode(order, order_mode_for(algorithm), algorithm)
    outcomes = [] if sink is None else None
    push = outcomes.append if sink is None else sink
    for u, v in edges:
        push(insert(dag, order, u, v))
    return outcomes
