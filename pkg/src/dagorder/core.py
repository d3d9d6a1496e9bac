"""Graph storage, the topological-order bijection, and affected regions.

A DagState holds forward and backward adjacency for nodes 0..n-1 plus the
inserted-edge count.  A TopoOrder is the bijection from nodes to priorities;
it comes in two backends:

* ``array``  -- integer ranks 1..n with an explicit inverse, used by the
  algorithms that reassign whole priority slots (naive recompute, the
  shift-based inserter, and the two-DFS inserter);
* ``label``  -- one OrderedList cell per node, used by the algorithms that
  create priorities between existing ones.

Both back priority comparisons by a single integer key, so the affected
region of a pending edge can be computed the same way in either mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ordlist import OrderedList, OrderLabel

NodeId = int
Seed = int

ARRAY = "array"
LABEL = "label"


class GraphError(ValueError):
    """Invalid graph construction input (self-loop, duplicate, bad n)."""


class DagState:
    """Directed graph under incremental edge insertion.

    Adjacency is kept in both directions: forward DFS needs successors,
    backward DFS and degree statistics need predecessors.
    """

    __slots__ = ("n", "out_adj", "in_adj", "m", "_edges")

    def __init__(self, n: int):
        if n < 1:
            raise GraphError(f"node count must be >= 1, got {n}")
        self.n = n
        self.out_adj: list[list[int]] = [[] for _ in range(n)]
        self.in_adj: list[list[int]] = [[] for _ in range(n)]
        self.m = 0
        self._edges: set[int] = set()

    def has_edge(self, u: int, v: int) -> bool:
        return u * self.n + v in self._edges

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.out_adj[u]]

    def degree(self, x: int) -> int:
        return len(self.out_adj[x]) + len(self.in_adj[x])

    def snapshot(self) -> tuple:
        return (
            self.m,
            tuple(tuple(a) for a in self.out_adj),
            tuple(tuple(a) for a in self.in_adj),
        )


class TopoOrder:
    """Bijection from nodes to priorities, array- or label-backed.

    ``key(x)`` returns an integer that orders nodes consistently with the
    current priorities (the rank itself in array mode, the cell tag in
    label mode).  Keys are only stable between mutations.
    """

    __slots__ = ("mode", "n", "rank", "node_at", "olist", "cells")

    def __init__(self, n: int, mode: str = ARRAY):
        if mode not in (ARRAY, LABEL):
            raise ValueError(f"unknown order mode {mode!r}")
        self.mode = mode
        self.n = n
        if mode == ARRAY:
            self.rank = list(range(1, n + 1))   # node -> rank in 1..n
            self.node_at = list(range(n))       # rank-1 -> node
            self.olist = None
            self.cells = None
        else:
            self.rank = None
            self.node_at = None
            self.olist, self.cells = OrderedList.from_values(range(n))

    def key(self, x: int) -> int:
        if self.mode == ARRAY:
            return self.rank[x]
        return self.cells[x].tag

    def is_before(self, x: int, y: int) -> bool:
        return self.key(x) < self.key(y)

    def sequence(self) -> list[int]:
        """Nodes in priority order."""
        if self.mode == ARRAY:
            return list(self.node_at)
        return self.olist.values()

    def cell(self, x: int) -> OrderLabel:
        if self.mode != LABEL:
            raise ValueError("cell() requires a label-backed order")
        return self.cells[x]

    def snapshot(self) -> tuple:
        if self.mode == ARRAY:
            return tuple(self.rank)
        return tuple((c.value, c.tag) for c in self.olist)


def new_dag(n: int, mode: str = ARRAY) -> tuple[DagState, TopoOrder]:
    """Fresh empty graph on n nodes paired with the identity order."""
    return DagState(n), TopoOrder(n, mode)


def add_edge_raw(dag: DagState, u: int, v: int) -> None:
    """Record edge u->v in both adjacency directions.

    Pure bookkeeping: no acyclicity or order maintenance happens here.
    """
    if u == v:
        raise GraphError(f"self-loop ({u},{v}) rejected")
    if not (0 <= u < dag.n and 0 <= v < dag.n):
        raise GraphError(f"edge ({u},{v}) out of range for n={dag.n}")
    key = u * dag.n + v
    if key in dag._edges:
        raise GraphError(f"duplicate edge ({u},{v})")
    dag._edges.add(key)
    dag.out_adj[u].append(v)
    dag.in_adj[v].append(u)
    dag.m += 1


def remove_edge_raw(dag: DagState, u: int, v: int) -> None:
    """Undo the most recent add_edge_raw of (u, v)."""
    dag._edges.remove(u * dag.n + v)
    dag.out_adj[u].remove(v)
    dag.in_adj[v].remove(u)
    dag.m -= 1


@dataclass
class AffectedRegion:
    """Nodes whose relative order a pending edge (u, v) can disturb.

    ``r_f`` holds nodes reachable from v that are at or below u's priority;
    ``r_b`` holds nodes reaching u that are at or above v's priority.  For a
    pending edge that closes a cycle the two sets overlap; callers decide
    what to do with that.  ``delta_edges`` counts the edges the two bounded
    searches traverse: those joining two r_f nodes plus those joining two
    r_b nodes (the search work, not the full incident degree of the sets).
    """

    r_f: set[int] = field(default_factory=set)
    r_b: set[int] = field(default_factory=set)
    delta_nodes: int = 0
    delta_edges: int = 0

    @property
    def has_overlap(self) -> bool:
        return bool(self.r_f & self.r_b)

    def nodes(self) -> set[int]:
        return self.r_f | self.r_b


def affected_region(dag: DagState, order: TopoOrder, u: int, v: int) -> AffectedRegion:
    """Region disturbed by inserting u->v under the current (valid) order.

    A non-invalidating edge (u already before v) yields empty sets.  The
    DFS is bounded: forward from v it only enters nodes at or below u's
    priority, backward from u only nodes at or above v's.
    """
    key = order.key
    ku = key(u)
    kv = key(v)
    region = AffectedRegion()
    if ku < kv:
        return region

    traversed = 0
    out_adj = dag.out_adj
    r_f = region.r_f
    stack = [v]
    r_f.add(v)
    while stack:
        x = stack.pop()
        for w in out_adj[x]:
            if key(w) <= ku:
                traversed += 1
                if w not in r_f:
                    r_f.add(w)
                    stack.append(w)

    in_adj = dag.in_adj
    r_b = region.r_b
    stack = [u]
    r_b.add(u)
    while stack:
        x = stack.pop()
        for w in in_adj[x]:
            if key(w) >= kv:
                traversed += 1
                if w not in r_b:
                    r_b.add(w)
                    stack.append(w)

    region.delta_nodes = len(r_f) + len(r_b)
    region.delta_edges = traversed
    return region
