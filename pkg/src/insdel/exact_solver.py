"""Exact values of D_q(n, d) for small instances.

D_q(n, d) is the independence number of the conflict graph on [q]^n whose
edges join words at edit distance <= d - 2.  Pairwise LCS values for the
whole space are computed once per (n, q) with a bit-parallel dynamic program
(vectorized over all words), and the maximum independent set is found by a
deterministic branch-and-bound with a greedy clique-cover bound.

Results are exact when the search completes; with a time budget and
``allow_incomplete`` the best code found so far is returned as a lower
witness, clearly flagged.
"""

from __future__ import annotations

import itertools
import time
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import Params, ResourceCapError
from .rs_construct import Code
from .words import Word

DEFAULT_VERTEX_CAP = 4096


@dataclass(frozen=True)
class SolveLimits:
    """Caps for the exact solver.

    ``vertex_cap`` bounds q^n; ``time_budget`` (seconds, None = unlimited)
    bounds the branch-and-bound search.  When the budget expires,
    ``allow_incomplete=True`` returns the incumbent as a lower witness and
    False raises TimeoutError.
    """

    vertex_cap: int = DEFAULT_VERTEX_CAP
    time_budget: float | None = None
    allow_incomplete: bool = False

    def __post_init__(self) -> None:
        if self.vertex_cap < 1:
            raise ValueError("vertex_cap must be >= 1")


@dataclass
class ExactResult:
    """value = D_q(n,d) when complete; otherwise a verified lower witness size."""

    value: int
    complete: bool
    witness: Code
    nodes: int = 0


def word_tuples(n: int, q: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(q), repeat=n))


@lru_cache(maxsize=2)
def lcs_matrix(n: int, q: int) -> np.ndarray:
    """LCS lengths between all pairs of [q]^n, shape (q^n, q^n), dtype uint8.

    Bit-parallel row DP: each word is a mask register; one pass of the
    pattern word updates all text words at once.  Requires n <= 63.
    """
    if n > 63:
        raise ResourceCapError("bit-parallel LCS supports n <= 63")
    words = word_tuples(n, q)
    big = len(words)
    arr = np.array(words, dtype=np.uint8)
    full = np.uint64((1 << n) - 1)
    # match[c][j] has bit i set iff word j has symbol c at position i
    match = np.zeros((q, big), dtype=np.uint64)
    for i in range(n):
        match[arr[:, i], np.arange(big)] |= np.uint64(1 << i)
    out = np.empty((big, big), dtype=np.uint8)
    for row, u in enumerate(words):
        v = np.full(big, full, dtype=np.uint64)
        for c in u:
            m = v & match[c]
            v = ((v + m) & full) | (v - m)
        out[row] = n - np.bitwise_count(v).astype(np.uint8)
    return out


def distance_matrix(n: int, q: int) -> np.ndarray:
    """Edit distances 2(n - LCS) between all pairs of [q]^n, dtype int16."""
    return (2 * (n - lcs_matrix(n, q).astype(np.int16))).astype(np.int16)


def conflict_masks(p: Params) -> list[int]:
    """Adjacency of the conflict graph as one bitmask int per vertex."""
    close = distance_matrix(p.n, p.q) <= p.d - 2
    np.fill_diagonal(close, False)
    return _pack_rows(close)


def _pack_rows(close: np.ndarray) -> list[int]:
    packed = np.packbits(close, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _greedy_independent_set(masks: list[int], order: list[int]) -> list[int]:
    """Greedy scan in the given vertex order; provides the initial incumbent."""
    taken: list[int] = []
    blocked = 0
    for v in order:
        if not (blocked >> v) & 1:
            taken.append(v)
            blocked |= masks[v]
    return taken


class _Search:
    """Deterministic branch-and-bound for maximum independent sets.

    Each node partitions its candidate set into cliques greedily; a set
    covered by k cliques has independence number at most k, so branching
    walks the partition in reverse discovery order and stops as soon as the
    remaining candidates fit within the slack.  Cliques are seeded from
    low-degree vertices (high bit indices after the degree-descending
    relabel), which leaves high-degree vertices in the late cliques where
    they are branched first.
    """

    def __init__(self, masks: list[int], deadline: float | None):
        self.masks = masks
        self.deadline = deadline
        self.nodes = 0
        self.timed_out = False
        # Seed the incumbent with the best of two greedy passes; the
        # low-degree-first pass is usually the strong one.
        by_degree = sorted(range(len(masks)), key=lambda v: masks[v].bit_count())
        initial = max(
            (_greedy_independent_set(masks, by_degree),
             _greedy_independent_set(masks, list(range(len(masks))))),
            key=len,
        )
        self.best = len(initial)
        self.best_set = initial

    def run(self) -> None:
        full = (1 << len(self.masks)) - 1
        self._expand(full, 0, [])

    def _clique_partition(self, candidates: int) -> list[tuple[int, int]]:
        """Greedy clique partition; returns (vertex, clique index) pairs in
        discovery order.  The number of cliques bounds alpha(candidates)."""
        out: list[tuple[int, int]] = []
        remaining = candidates
        k = 0
        while remaining:
            k += 1
            v = remaining.bit_length() - 1
            remaining &= ~(1 << v)
            out.append((v, k))
            reach = self.masks[v]
            cand = remaining & reach
            while cand:
                w = cand.bit_length() - 1
                remaining &= ~(1 << w)
                reach &= self.masks[w]
                cand = remaining & reach
                out.append((w, k))
        return out

    def _expand(self, candidates: int, size: int, chosen: list[int]) -> None:
        if self.timed_out:
            return
        self.nodes += 1
        if self.deadline is not None and self.nodes % 128 == 0:
            if time.monotonic() > self.deadline:
                self.timed_out = True
                return
        partition = self._clique_partition(candidates)
        for v, k in reversed(partition):
            if size + k <= self.best:
                return
            chosen.append(v)
            if size + 1 > self.best:
                self.best = size + 1
                self.best_set = list(chosen)
            child = candidates & ~self.masks[v] & ~(1 << v)
            if child:
                self._expand(child, size + 1, chosen)
                if self.timed_out:
                    chosen.pop()
                    return
            chosen.pop()
            candidates &= ~(1 << v)


def exact_D(p: Params, limits: SolveLimits = SolveLimits()) -> ExactResult:
    """Maximum size of an (n, d)_q insdel code, with a witness code."""
    total = p.q**p.n
    if total > limits.vertex_cap:
        raise ResourceCapError(
            f"q^n = {p.q}^{p.n} = {total} exceeds vertex cap {limits.vertex_cap}"
        )
    words = word_tuples(p.n, p.q)
    if p.d == 2:
        # Distinct equal-length words always differ by >= 2 edits.
        witness = Code(
            words=tuple(Word(w, p.q) for w in words),
            n=p.n,
            q=p.q,
            verified_min_edit_distance=2,
            provenance="exact-solver(d=2: whole space)",
        )
        return ExactResult(value=total, complete=True, witness=witness)
    close = distance_matrix(p.n, p.q) <= p.d - 2
    np.fill_diagonal(close, False)
    # Relabel by degree descending (stable) so dense regions pack into the
    # low bits, where clique growing and lowest-bit selection start.
    degrees = close.sum(axis=1)
    order = np.lexsort((np.arange(total), -degrees))
    masks = _pack_rows(close[np.ix_(order, order)])
    deadline = None if limits.time_budget is None else time.monotonic() + limits.time_budget
    search = _Search(masks, deadline)
    search.run()
    if search.timed_out and not limits.allow_incomplete:
        raise TimeoutError(f"exact_D({p.n},{p.q},{p.d}) hit the time budget")
    members = sorted(int(order[i]) for i in search.best_set)
    witness = Code(
        words=tuple(Word(words[i], p.q) for i in members),
        n=p.n,
        q=p.q,
        verified_min_edit_distance=p.d,
        provenance="exact-solver"
        + ("" if not search.timed_out else " (incomplete: lower witness only)"),
    )
    return ExactResult(
        value=search.best,
        complete=not search.timed_out,
        witness=witness,
        nodes=search.nodes,
    )


def conflict_degree_histogram(p: Params, vertex_cap: int = DEFAULT_VERTEX_CAP) -> dict[int, int]:
    """Degree histogram of the conflict graph (degree -> vertex count)."""
    total = p.q**p.n
    if total > vertex_cap:
        raise ResourceCapError(
            f"q^n = {p.q}^{p.n} = {total} exceeds vertex cap {vertex_cap}"
        )
    close = distance_matrix(p.n, p.q) <= p.d - 2
    np.fill_diagonal(close, False)
    degrees = close.sum(axis=1)
    return dict(Counter(int(d) for d in degrees))
