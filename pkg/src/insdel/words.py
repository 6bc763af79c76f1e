"""Words over {0,...,q-1}: edit distance, spheres, edit-operation sequences.

The alphabet is zero-based (a pure relabeling of the usual {1,...,q}).  Words
are immutable and ordered, so sphere enumerations can return canonical sorted
tuples.  Everything here is pure and safe to call concurrently.
"""

from __future__ import annotations

import itertools
from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .core import ResourceCapError

# Default cap on q^n for whole-space scans (editing_ball is a test oracle).
DEFAULT_SCAN_CAP = 1 << 20

DELETE = "del"
INSERT = "ins"


@dataclass(frozen=True, order=True)
class Word:
    """An immutable word over the alphabet {0, ..., q-1}."""

    symbols: tuple[int, ...]
    q: int

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.q}")
        if any(not 0 <= s < self.q for s in self.symbols):
            raise ValueError(f"symbols {self.symbols} not all in [0, {self.q})")

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return " ".join(str(s) for s in self.symbols)


def word(symbols: Iterable[int], q: int) -> Word:
    return Word(tuple(symbols), q)


def all_words(n: int, q: int) -> Iterator[Word]:
    """All q^n words of length n in lexicographic order."""
    for t in itertools.product(range(q), repeat=n):
        yield Word(t, q)


def _check_same_alphabet(x: Word, y: Word) -> None:
    if x.q != y.q:
        raise ValueError(f"alphabet mismatch: q={x.q} vs q={y.q}")


def lcs_tuples(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Length of a longest common subsequence (two-row dynamic program)."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return 0
    prev = [0] * (len(b) + 1)
    for sa in a:
        cur = [0]
        best = 0
        for j, sb in enumerate(b):
            best = prev[j] + 1 if sa == sb else max(prev[j + 1], cur[j])
            cur.append(best)
        prev = cur
    return prev[-1]


def lcs(x: Word, y: Word) -> int:
    _check_same_alphabet(x, y)
    return lcs_tuples(x.symbols, y.symbols)


def edit_distance(x: Word, y: Word) -> int:
    """Minimum number of insertions+deletions turning x into y.

    Equals len(x) + len(y) - 2*LCS(x, y).
    """
    _check_same_alphabet(x, y)
    return len(x) + len(y) - 2 * lcs_tuples(x.symbols, y.symbols)


def runs(u: Word) -> int:
    """Number of maximal constant intervals of u."""
    if len(u) == 0:
        raise ValueError("runs is undefined for the empty word")
    count = 1
    for a, b in zip(u.symbols, u.symbols[1:]):
        if a != b:
            count += 1
    return count


def deletion_sphere(u: Word, t: int) -> tuple[Word, ...]:
    """All distinct subsequences of u of length len(u) - t, sorted."""
    n = len(u)
    if not 0 <= t <= n:
        raise ValueError(f"deletion radius t={t} out of [0, {n}]")
    seen = {
        tuple(u.symbols[i] for i in keep)
        for keep in itertools.combinations(range(n), n - t)
    }
    return tuple(Word(s, u.q) for s in sorted(seen))


def deletion_sphere_tuples(symbols: tuple[int, ...], t: int) -> frozenset[tuple[int, ...]]:
    """Raw-tuple variant of deletion_sphere, for bulk enumeration loops."""
    n = len(symbols)
    return frozenset(
        tuple(symbols[i] for i in keep)
        for keep in itertools.combinations(range(n), n - t)
    )


def insertion_sphere(u: Word, t: int) -> tuple[Word, ...]:
    """All distinct supersequences of u of length len(u) + t, sorted."""
    if t < 0:
        raise ValueError(f"insertion radius must be >= 0, got {t}")
    current = {u.symbols}
    for _ in range(t):
        nxt = set()
        for w in current:
            for pos in range(len(w) + 1):
                for s in range(u.q):
                    nxt.add(w[:pos] + (s,) + w[pos:])
        current = nxt
    return tuple(Word(s, u.q) for s in sorted(current))


def insertion_sphere_size(n: int, t: int, q: int) -> int:
    """|S_I(u, t)| for any u of length n: sum_{i=0}^{t} C(n+t, i) (q-1)^i.

    Independent of the center word.
    """
    if n < 0 or t < 0:
        raise ValueError(f"insertion_sphere_size requires n, t >= 0, got n={n}, t={t}")
    if q < 2:
        raise ValueError(f"alphabet size must be >= 2, got {q}")
    from .combinat import binomial

    return sum(binomial(n + t, i) * (q - 1) ** i for i in range(t + 1))


def editing_ball(u: Word, radius: int, cap: int = DEFAULT_SCAN_CAP) -> tuple[Word, ...]:
    """All same-length words within edit distance `radius` of u.

    Enumerates the whole space [q]^n, so this exists only as a small-scale
    oracle; refuses when q^n exceeds `cap`.
    """
    if radius % 2 != 0:
        raise ValueError(f"editing-ball radius must be even, got {radius}")
    n = len(u)
    if not 0 <= radius <= 2 * n:
        raise ValueError(f"radius {radius} out of [0, {2 * n}]")
    if u.q**n > cap:
        raise ResourceCapError(f"editing_ball scan size {u.q}^{n} exceeds cap {cap}")
    min_lcs = n - radius // 2
    out = [
        Word(t, u.q)
        for t in itertools.product(range(u.q), repeat=n)
        if lcs_tuples(u.symbols, t) >= min_lcs
    ]
    return tuple(out)


# ---------------------------------------------------------------------------
# Insertion/deletion operation sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EditOp:
    """A single operation at an original position of the start word.

    Deletions remove the symbol at 1-based `position`; insertions place
    `symbol` right after `position` (position 0 inserts before the first
    symbol).
    """

    position: int
    kind: str
    symbol: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in (DELETE, INSERT):
            raise ValueError(f"unknown op kind {self.kind!r}")
        if self.kind == INSERT and self.symbol is None:
            raise ValueError("insert op needs a symbol")
        if self.kind == DELETE and self.symbol is not None:
            raise ValueError("delete op must not carry a symbol")
        if self.position < 0:
            raise ValueError(f"op position must be >= 0, got {self.position}")


@dataclass(frozen=True)
class OpSequence:
    """Operations in application order, positions non-increasing.

    Admissibility for a start word of length n: every position is <= n, a
    deletion's position is >= 1 and strictly greater than the position of the
    operation applied after it.  Under these rules each position refers to a
    slot of the *original* word, which makes the sequence <-> result word
    correspondence one-to-one.
    """

    entries: tuple[EditOp, ...]

    def positions(self) -> frozenset[int]:
        return frozenset(op.position for op in self.entries)

    def validate(self, n: int, q: int) -> None:
        prev: EditOp | None = None
        for op in self.entries:
            if op.position > n:
                raise ValueError(f"op position {op.position} exceeds word length {n}")
            if op.kind == DELETE and op.position < 1:
                raise ValueError("cannot delete at position 0")
            if op.kind == INSERT and not 0 <= (op.symbol or 0) < q:
                raise ValueError(f"inserted symbol {op.symbol} not in [0, {q})")
            if prev is not None:
                if op.position > prev.position:
                    raise ValueError("op positions must be non-increasing")
                if prev.kind == DELETE and prev.position <= op.position:
                    raise ValueError("a deletion's position must exceed the next op's position")
            prev = op


def delete_at(position: int) -> EditOp:
    return EditOp(position, DELETE)


def insert_after(position: int, symbol: int) -> EditOp:
    return EditOp(position, INSERT, symbol)


def apply_ops(u: Word, ops: OpSequence) -> Word:
    """Apply an admissible operation sequence to u (largest position first)."""
    ops.validate(len(u), u.q)
    out = list(u.symbols)
    for op in ops.entries:
        if op.kind == DELETE:
            del out[op.position - 1]
        else:
            out.insert(op.position, op.symbol)  # type: ignore[arg-type]
    return Word(tuple(out), u.q)


def count_lambda_isolated(positions: Iterable[int], n: int, lam: int) -> int:
    """Count positions i with lam < i < n - lam and no other j within 2*lam."""
    pos = set(positions)
    count = 0
    for i in pos:
        if not lam < i < n - lam:
            continue
        if any(j != i and abs(j - i) <= 2 * lam for j in pos):
            continue
        count += 1
    return count


def is_lambda_nonrepeating(u: Word, lam: int) -> bool:
    """True iff all length-lam windows of u are pairwise distinct.

    Distinct intervals may overlap; the check covers every pair.
    """
    n = len(u)
    if not 1 <= lam <= n:
        raise ValueError(f"lambda={lam} out of [1, {n}]")
    windows = [u.symbols[i : i + lam] for i in range(n - lam + 1)]
    return len(set(windows)) == len(windows)


def subsequence_support_profile(c: Word, m: int) -> dict[int, int]:
    """Distinct length-m subsequences of c, counted by number of distinct symbols."""
    n = len(c)
    if not 1 <= m <= n:
        raise ValueError(f"subsequence length m={m} out of [1, {n}]")
    subs = {
        tuple(c.symbols[i] for i in keep)
        for keep in itertools.combinations(range(n), m)
    }
    profile: Counter[int] = Counter(len(set(s)) for s in subs)
    return dict(profile)
