"""Certified lower bounds, hypergraph packing formulas, and asymptotic estimates.

The counting (Gilbert-Varshamov style) lower bound and the greedy matching
construction are certified; the near-optimal matching guarantee and the
refined logarithmic improvements are existential results whose closed-form
main terms are evaluated here strictly as non-certified estimates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .combinat import binomial, is_prime_power
from .core import BoundKind, BoundValue, Params, ResourceCapError
from .rs_construct import Code
from .words import Word, deletion_sphere_tuples

DEFAULT_GREEDY_CAP = 1 << 14
DEFAULT_TRIPLE_CAP = 1 << 10


def gv_lower(p: Params) -> BoundValue:
    """Counting lower bound q^{n+d/2-1} / (sum_{i<d/2} C(n,i)(q-1)^i)^2."""
    n, q, d = p.n, p.q, p.d
    if not 4 <= d <= 2 * n - 2:
        return BoundValue.not_applicable("gv", f"needs 4 <= d <= 2n-2, got d={d}")
    ball = sum(binomial(n, i) * (q - 1) ** i for i in range(d // 2))
    value = Fraction(q ** (n + d // 2 - 1), ball * ball)
    return BoundValue("gv", BoundKind.CERTIFIED_LOWER, value)


@dataclass(frozen=True)
class HypergraphSpec:
    """Deletion hypergraph: vertices [q]^{n-t}, one hyperedge S_D(u, t) per u in [q]^n.

    Matchings are exactly the t-deletion-correcting codes of length n.
    """

    n: int
    q: int
    t: int

    def __post_init__(self) -> None:
        if not 1 <= self.t <= self.n - 1:
            raise ValueError(f"need 1 <= t <= n-1, got t={self.t}, n={self.n}")
        if self.q < 2:
            raise ValueError(f"q must be >= 2, got {self.q}")


def hypergraph_degree(h: HypergraphSpec) -> int:
    """Maximum degree: sum_{i=0}^{t} C(n,i)(q-1)^i (an insertion-sphere size)."""
    return sum(binomial(h.n, i) * (h.q - 1) ** i for i in range(h.t + 1))


def hypergraph_codegree(h: HypergraphSpec) -> int:
    """Maximum codegree: sum_{i=0}^{t-1} C(n,i)(q-1)^i (1 - (-1)^{t-i})."""
    return sum(
        binomial(h.n, i) * (h.q - 1) ** i * (1 - (-1) ** (h.t - i)) for i in range(h.t)
    )


def greedy_matching_code(h: HypergraphSpec, cap: int = DEFAULT_GREEDY_CAP) -> Code:
    """Maximal matching by lexicographic scan over centers.

    A center u is accepted when its whole deletion sphere S_D(u, t) is
    disjoint from every previously claimed sphere; accepted centers form a
    code with edit distance >= 2t+2.  Deterministic single pass.
    """
    total = h.q**h.n
    if total > cap:
        raise ResourceCapError(f"q^n = {h.q}^{h.n} = {total} exceeds cap {cap}")
    claimed: set[tuple[int, ...]] = set()
    accepted: list[tuple[int, ...]] = []
    for u in itertools.product(range(h.q), repeat=h.n):
        sphere = deletion_sphere_tuples(u, h.t)
        if claimed.isdisjoint(sphere):
            accepted.append(u)
            claimed.update(sphere)
    return Code(
        words=tuple(Word(u, h.q) for u in accepted),
        n=h.n,
        q=h.q,
        verified_min_edit_distance=2 * h.t + 2,
        provenance=f"greedy-hypergraph(n={h.n}, q={h.q}, t={h.t})",
    )


def matching_main_term(p: Params) -> BoundValue:
    """Shared main term q^{n-d/2+1} / C(n, d/2-1) of the two-sided asymptotics.

    For fixed n, d and growing q the true value D_q(n,d) approaches this;
    never certified at finite parameters.
    """
    n, q, d = p.n, p.q, p.d
    if not 4 <= d <= 2 * n - 2:
        return BoundValue.not_applicable(
            "matching_main_term", f"needs 4 <= d <= 2n-2, got d={d}"
        )
    value = Fraction(q ** (n - d // 2 + 1), binomial(n, d // 2 - 1))
    return BoundValue("matching_main_term", BoundKind.ESTIMATE, value, note="q -> infinity main term")


_LOG_GUARD = math.exp(8.1)


def refined_gv_estimate(p: Params) -> BoundValue:
    """Main terms of the logarithmic improvements over the counting bound.

    Prime-field branch (q >= n a prime power, 6 <= d < n/e^8.1 + 2):
    (d/2-1)(ln n - ln(d-2) - 8.1) q^{n-d/2+1} / C(n, d/2-1)^2.
    Fixed-alphabet branch (d >= 6):
    (d/2-1) q^{n-d/2+1} log2(n) / n^{d-2}.
    Both are asymptotic and reported as estimates only.
    """
    n, q, d = p.n, p.q, p.d
    name = "refined_gv"
    if d < 6:
        return BoundValue.not_applicable(name, f"needs d >= 6, got d={d}")
    if q >= n and is_prime_power(q) and d - 2 < n / _LOG_GUARD:
        log_factor = math.log(n) - math.log(d - 2) - 8.1
        value = (
            (d // 2 - 1)
            * Fraction(log_factor)
            * Fraction(q ** (n - d // 2 + 1), binomial(n, d // 2 - 1) ** 2)
        )
        return BoundValue(name, BoundKind.ESTIMATE, value, note="prime-field branch")
    if d <= 2 * n - 2:
        value = (
            (d // 2 - 1)
            * Fraction(q ** (n - d // 2 + 1))
            * Fraction(math.log2(n))
            / n ** (d - 2)
        )
        return BoundValue(name, BoundKind.ESTIMATE, value, note="fixed-alphabet branch")
    return BoundValue.not_applicable(name, "neither branch applies")


def triangle_bound_eval(n: int, q: int, a: int, b: int, c: int) -> Fraction:
    """Main terms of the explicit bound on near-triples of words.

    Counts triples (u, v, w) in ([q]^n)^3 with pairwise edit distances at most
    a, b, c (a >= b >= c): n^{a+b+c} q^{n+2b+2c} (66a)^{2b+2c+1} (log2 n)^{2b+2c}
    plus 3 q^{n+2a} n^{-4a}.  Vanishing-order factors are dropped; the value
    is an estimate, not a certified count.
    """
    if not n >= a >= b >= c >= 1:
        raise ValueError(f"need n >= a >= b >= c >= 1, got n={n}, a={a}, b={b}, c={c}")
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    log_pow = Fraction(math.log2(n)) ** (2 * b + 2 * c)
    first = n ** (a + b + c) * Fraction(q) ** (n + 2 * b + 2 * c) * (66 * a) ** (
        2 * b + 2 * c + 1
    ) * log_pow
    second = 3 * Fraction(q) ** (n + 2 * a) / Fraction(n) ** (4 * a)
    return first + second


def count_good_triples_bruteforce(
    n: int, q: int, a: int, b: int, c: int, cap: int = DEFAULT_TRIPLE_CAP
) -> int:
    """Exact number of triples (u,v,w) with d_E(u,v)<=a, d_E(u,w)<=b, d_E(v,w)<=c.

    Cubic in q^n, hence the tight cap.  Computed from the full pairwise
    distance matrix with one boolean matrix product.  Unlike the estimate
    formula, the raw counter accepts any ordered radii a >= b >= c >= 0.
    """
    if not a >= b >= c >= 0:
        raise ValueError(f"need a >= b >= c >= 0, got a={a}, b={b}, c={c}")
    total = q**n
    if total > cap:
        raise ResourceCapError(f"q^n = {q}^{n} = {total} exceeds cap {cap}")
    from .exact_solver import distance_matrix

    dist = distance_matrix(n, q)
    close_a = (dist <= a).astype(np.int64)
    close_b = (dist <= b).astype(np.int64)
    close_c = (dist <= c).astype(np.int64)
    # sum_{u,v,w} A[u,v] B[u,w] C[v,w] = sum_{v,w} (A^T B)[v,w] C[v,w]
    return int(((close_a.T @ close_b) * close_c).sum())
