"""Brute-force ground truth and analytic overlays.

Everything here is deliberately simple and independent of the incremental
algorithms: reachability is recomputed from scratch, comparable pairs come
from a full per-node closure, and minimal covers come from exhaustive
subset search.  These are the referees the fast paths are tested against.

Logarithm conventions (the formulas do not fix them themselves): the
closed-form prediction for comparable-pair counts and the degree bound use
the natural log, as usual in random graph theory; the accumulated cost
parameters use log base 2 with log(x) = 0 for x <= 1, as usual for
work-unit counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import DagState, TopoOrder


def check_valid_order(dag: DagState, order: TopoOrder) -> bool:
    """True iff every edge goes from lower to higher priority.

    Edge-wise checking suffices: priorities along any path then increase
    step by step.
    """
    key = order.key
    for u in range(dag.n):
        ku = key(u)
        for v in dag.out_adj[u]:
            if ku >= key(v):
                return False
    return True


def _toposort(dag: DagState) -> list[int] | None:
    """Kahn order of the dag, or None if it contains a cycle."""
    indeg = [len(dag.in_adj[x]) for x in range(dag.n)]
    stack = [x for x in range(dag.n) if indeg[x] == 0]
    out = []
    while stack:
        x = stack.pop()
        out.append(x)
        for w in dag.out_adj[x]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return out if len(out) == dag.n else None


def descendant_bits(dag: DagState) -> list[int]:
    """Per-node reachability closure as bitmasks (node included in its own set).

    Bottom-up over a topological order, so each edge is OR-ed once.
    """
    topo = _toposort(dag)
    if topo is None:
        raise ValueError("graph is cyclic")
    reach = [0] * dag.n
    for x in reversed(topo):
        bits = 1 << x
        for w in dag.out_adj[x]:
            bits |= reach[w]
        reach[x] = bits
    return reach


def comparable_pairs(dag: DagState) -> int:
    """Number of distinct node pairs connected by a directed path."""
    reach = descendant_bits(dag)
    return sum(r.bit_count() - 1 for r in reach)


def reachable_from(dag: DagState, source: int) -> set[int]:
    """All nodes reachable from source, including source (plain DFS)."""
    seen = {source}
    stack = [source]
    while stack:
        x = stack.pop()
        for w in dag.out_adj[x]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def reaching_to(dag: DagState, target: int) -> set[int]:
    """All nodes that reach target, including target."""
    seen = {target}
    stack = [target]
    while stack:
        x = stack.pop()
        for w in dag.in_adj[x]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def misordered_pairs(
    dag_before: DagState, order_before: TopoOrder, new_edge: tuple[int, int]
) -> list[tuple[int, int]]:
    """Reachable-but-misordered pairs (x, y) once new_edge joins dag_before.

    Pairs are measured against order_before.  Since order_before is valid
    for dag_before, every such pair runs through the new edge: x reaches u,
    v reaches y, and y sits below x.
    """
    u, v = new_edge
    key = order_before.key
    if key(u) < key(v):
        return []
    into_u = reaching_to(dag_before, u)
    from_v = reachable_from(dag_before, v)
    pairs = []
    for x in into_u:
        kx = key(x)
        for y in from_v:
            if key(y) < kx:
                pairs.append((x, y))
    return pairs


def is_cover(
    dag_before: DagState,
    order_before: TopoOrder,
    new_edge: tuple[int, int],
    cover: set[int],
) -> bool:
    """True iff every misordered reachable pair has an endpoint in *cover*."""
    return all(
        x in cover or y in cover
        for x, y in misordered_pairs(dag_before, order_before, new_edge)
    )


def max_degree(dag: DagState) -> int:
    """Largest in-degree + out-degree over all nodes."""
    return max((dag.degree(x) for x in range(dag.n)), default=0)


@dataclass
class PhiTrace:
    """Comparable-pair counts along an insertion sequence (phi_0 = 0)."""

    phis: list[int] = field(default_factory=lambda: [0])

    def record(self, phi: int) -> int:
        """Append phi_i and return the increment over phi_{i-1}."""
        delta = phi - self.phis[-1]
        self.phis.append(phi)
        return delta

    @property
    def deltas(self) -> list[int]:
        return [b - a for a, b in zip(self.phis, self.phis[1:])]

    def is_monotone(self) -> bool:
        return all(d >= 0 for d in self.deltas)


@dataclass(frozen=True)
class MinimalCoverResult:
    cover: frozenset[int]
    measure: int


class CoverSearchLimitError(ValueError):
    """Affected region too large for exhaustive minimal-cover search."""


def min_cover_bruteforce(
    dag_before: DagState,
    order_before: TopoOrder,
    new_edge: tuple[int, int],
    limit: int = 16,
) -> MinimalCoverResult:
    """Exhaustive minimum-measure cover for a pending invalidating edge.

    Candidates are subsets of the affected region: both endpoints of every
    misordered pair lie inside it, and any node outside only adds measure.
    Measure is node count plus incident-edge degree sum, counted in the
    graph including the pending edge; ties break toward fewer nodes, then
    the lexicographically smallest node set.
    """
    from .core import affected_region

    region = affected_region(dag_before, order_before, *new_edge)
    pairs = misordered_pairs(dag_before, order_before, new_edge)
    if not pairs:
        return MinimalCoverResult(cover=frozenset(), measure=0)
    delta = sorted(region.nodes())
    if len(delta) > limit:
        raise CoverSearchLimitError(
            f"affected region has {len(delta)} nodes (limit {limit})"
        )
    u, v = new_edge
    deg = [dag_before.degree(x) + (x == u) + (x == v) for x in delta]
    index_of = {x: i for i, x in enumerate(delta)}
    pair_masks = [
        (1 << index_of[x]) | (1 << index_of[y]) for x, y in pairs
    ]
    best = None
    for subset in range(1 << len(delta)):
        if any(not (subset & pm) for pm in pair_masks):
            continue
        nodes = [delta[i] for i in range(len(delta)) if subset >> i & 1]
        measure = len(nodes) + sum(deg[i] for i in range(len(delta)) if subset >> i & 1)
        candidate = (measure, len(nodes), tuple(nodes))
        if best is None or candidate < best:
            best = candidate
    measure, _, nodes = best
    return MinimalCoverResult(cover=frozenset(nodes), measure=measure)


def predicted_phi(n: int, k: int) -> float:
    """Closed-form expected comparable-pair count after k random insertions.

    Valid for n*ln(n) < k <= N - 2*ln(n) with N = n*(n-1)/2; the first
    branch applies through k <= N - 2*n*ln(n), the second above it.  The
    vanishing correction factor is dropped, so compare against this with
    percentage bands only.
    """
    log_n = math.log(n)
    cap = n * (n - 1) / 2
    if not n * log_n < k:
        raise ValueError(f"k={k} not above n*ln(n)={n * log_n:.2f}")
    if k <= cap - 2 * n * log_n:
        anchor = k + n * log_n
    elif k <= cap - 2 * log_n:
        anchor = k + math.sqrt(log_n * (cap - k))
    else:
        raise ValueError(f"k={k} above N - 2*ln(n)={cap - 2 * log_n:.2f}")
    frac = 1.0 - (n - 1) * log_n / (2.0 * anchor)
    return (n * n / 2.0) * frac * frac


def _log2_floor0(x: float) -> float:
    return math.log2(x) if x > 1 else 0.0


def cost_pk(stats: list) -> float:
    """Accumulated two-DFS cost parameter: sum of ||delta|| + |delta|*log2|delta|."""
    return sum(
        s.delta_edges + s.delta_nodes * _log2_floor0(s.delta_nodes) for s in stats
    )


def cost_ahrsz(stats: list) -> float:
    """Accumulated cover cost parameter: sum of |>K<| * log2|>K<|."""
    return sum(s.cover_measure * _log2_floor0(s.cover_measure) for s in stats)


def count_invalidating(outcomes: list) -> int:
    """Number of accepted insertions that arrived against the current order.

    Rejected (cycle) edges are not counted: they were never inserted, which
    keeps the count bounded by the number of edges in the graph.
    """
    return sum(1 for o in outcomes if o.stats is not None and o.stats.invalidating)
