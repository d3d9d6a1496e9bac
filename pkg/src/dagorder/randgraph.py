"""Seeded samplers for random DAG models and edge insertion sequences.

All randomness comes from a fixed 64-bit counter-based generator
(SplitMix64: state advances by the golden-ratio increment, output is the
finalizing mix), with bounded draws made exactly uniform by rejection.
Shuffles are backward element-swap shuffles.  The point of pinning the
exact algorithms is that a (n, seed) pair identifies one sequence forever,
independent of platform or library versions.

The generated graphs direct every edge from lower to higher node index, so
they are acyclic by construction and the identity order is always valid.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .core import DagState, Seed, add_edge_raw

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_1 = 0xBF58476D1CE4E5B9
MIX_2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer on one 64-bit word."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX_1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Counter-based 64-bit generator; output k is mix64(seed + (k+1)*gamma)."""

    __slots__ = ("state",)

    def __init__(self, seed: Seed):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) via rejection (exactly unbiased)."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        reject_from = MASK64 + 1 - ((MASK64 + 1) % bound)
        while True:
            r = self.next_u64()
            if r < reject_from:
                return r % bound

    def block(self, count: int) -> np.ndarray:
        """Next *count* outputs as uint64, consuming the same stream."""
        base = np.uint64(self.state)
        ks = np.arange(1, count + 1, dtype=np.uint64)
        z = base + ks * np.uint64(GOLDEN_GAMMA)
        self.state = int(z[-1]) if count else self.state
        z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX_1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX_2)
        return z ^ (z >> np.uint64(31))


def derive_seed(base: Seed, n: int, run: int) -> Seed:
    """Stable per-(n, run) seed: base xor a mix of the packed pair."""
    return (base ^ mix64((n << 32) | (run & 0xFFFFFFFF))) & MASK64


@dataclass(frozen=True)
class ReisSequence:
    """Uniform random permutation of all n*(n-1)/2 complete-DAG edges."""

    n: int
    seed: Seed
    edges: tuple  # of (u, v) pairs with u < v by node index

    def __len__(self) -> int:
        return len(self.edges)

    def dump(self, fp: TextIO) -> None:
        fp.write(f"# reis n={self.n} seed={self.seed}\n")
        for u, v in self.edges:
            fp.write(f"{u} {v}\n")


def _swap_targets(count: int, rng: SplitMix64) -> list[int]:
    """Draw targets j_i = below(i+1) for i = count-1 .. 1, vectorized.

    The fast path assumes no rejection ever fires (probability under
    count * 2**-50 at these scales); if one does, it replays the draws
    scalar-for-scalar so the stream semantics stay exact.
    """
    if count < 2:
        return []
    start_state = rng.state
    outs = rng.block(count - 1)
    bounds = np.arange(count, 1, -1, dtype=np.uint64)
    mod = (np.uint64(0) - bounds) % bounds  # == 2**64 % bound
    rejected = outs > (np.uint64(MASK64) - mod)
    if not rejected.any():
        return (outs % bounds).tolist()
    rng.state = start_state
    return [rng.below(i + 1) for i in range(count - 1, 0, -1)]


def gen_reis(n: int, seed: Seed) -> ReisSequence:
    """All index-increasing pairs of [0, n) in uniformly random order."""
    if n < 2:
        raise ValueError(f"REIS needs n >= 2, got {n}")
    us, vs = np.triu_indices(n, k=1)
    count = len(us)
    perm = list(range(count))
    rng = SplitMix64(seed)
    targets = _swap_targets(count, rng)
    i = count - 1
    for j in targets:
        perm[i], perm[j] = perm[j], perm[i]
        i -= 1
    us = us[perm]
    vs = vs[perm]
    return ReisSequence(n=n, seed=seed, edges=tuple(zip(us.tolist(), vs.tolist())))


SCRAMBLE_SALT = 0x5CA7C0DE1F2E3D4C


def node_scramble(n: int, seed: Seed) -> list[int]:
    """Uniform random node relabeling derived from *seed* (stable)."""
    rng = SplitMix64(mix64(seed ^ SCRAMBLE_SALT))
    perm = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def scramble_nodes(seq: ReisSequence, seed: Seed | None = None) -> tuple:
    """The sequence's edges with node identities randomly relabeled.

    A raw sequence lists every edge as an index-increasing pair, so feeding
    it to an algorithm whose initial priorities follow node index never
    invalidates anything.  Experiments want the opposite regime: the hidden
    final order must be unrelated to the starting priorities.  Relabeling
    nodes through a seed-derived uniform permutation produces exactly that
    while keeping (n, seed) fully reproducible.
    """
    perm = node_scramble(seq.n, seq.seed if seed is None else seed)
    return tuple((perm[u], perm[v]) for u, v in seq.edges)


def sample_dag_gnm(n: int, M: int, seed: Seed) -> DagState:
    """Random DAG with exactly M edges: the first M edges of the seed's REIS."""
    top = n * (n - 1) // 2
    if not 0 <= M <= top:
        raise ValueError(f"M must be in [0, {top}] for n={n}, got {M}")
    dag = DagState(n)
    if n >= 2:
        seq = gen_reis(n, seed)
        for u, v in seq.edges[:M]:
            add_edge_raw(dag, u, v)
    return dag


def sample_dag_gnp(n: int, p: float, seed: Seed) -> DagState:
    """Random DAG where each index-increasing pair appears with probability p."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must be in (0, 1), got {p}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    dag = DagState(n)
    if n < 2:
        return dag
    us, vs = np.triu_indices(n, k=1)
    rng = SplitMix64(seed)
    outs = rng.block(len(us))
    # Edge present iff draw < p * 2**64 (threshold exact for float64 p).
    threshold = np.uint64(min(int(p * (MASK64 + 1)), MASK64))
    mask = outs < threshold
    for u, v in zip(us[mask].tolist(), vs[mask].tolist()):
        add_edge_raw(dag, u, v)
    return dag
