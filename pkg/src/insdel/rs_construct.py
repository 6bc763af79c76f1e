"""Reed-Solomon codes over prime fields and greedy insdel-code construction.

The constructor walks the codewords of RS(n, k) with k = n - d/2 + 1 in
generation order, keeps only lambda-nonrepeating words, and greedily accepts
a word when its edit distance to every accepted word is at least d.  Output
codes carry a verified minimum distance and can be written to / read from a
plain text format: first line ``q n [d]``, then one codeword per line.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import e as _euler
from pathlib import Path

import numpy as np

from .combinat import binomial, is_prime
from .core import BoundKind, BoundValue, ResourceCapError
from .words import Word, edit_distance, is_lambda_nonrepeating, lcs_tuples

DEFAULT_ENUM_CAP = 1 << 20
DEFAULT_GREEDY_CAP = 1 << 14
DEFAULT_LAMBDA = 3


@dataclass(frozen=True)
class RSSpec:
    """[n, k] Reed-Solomon code over the prime field F_q with evaluation points alpha."""

    q: int
    n: int
    k: int
    eval_points: tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_prime(self.q):
            raise ValueError(f"q must be prime (extension fields unsupported), got {self.q}")
        if not 1 <= self.n <= self.q:
            raise ValueError(f"need 1 <= n <= q, got n={self.n}, q={self.q}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}")
        if len(self.eval_points) != self.n:
            raise ValueError("need exactly n evaluation points")
        if len(set(self.eval_points)) != self.n:
            raise ValueError("evaluation points must be pairwise distinct")
        if any(not 0 <= a < self.q for a in self.eval_points):
            raise ValueError("evaluation points must lie in [0, q)")


def rs_spec(q: int, n: int, k: int, alpha: tuple[int, ...] | None = None) -> RSSpec:
    """Build an RSSpec; default evaluation points are (0, 1, ..., n-1)."""
    if alpha is None:
        alpha = tuple(range(n))
    return RSSpec(q=q, n=n, k=k, eval_points=alpha)


@dataclass
class Code:
    """A set of equal-length words with a verified minimum edit distance.

    ``verified_min_edit_distance`` of D means every distinct pair is at edit
    distance >= D (not necessarily tight); None means unverified.
    """

    words: tuple[Word, ...]
    n: int
    q: int
    verified_min_edit_distance: int | None = None
    provenance: str = ""

    def __post_init__(self) -> None:
        for w in self.words:
            if len(w) != self.n or w.q != self.q:
                raise ValueError("all codewords must share length n and alphabet q")

    def __len__(self) -> int:
        return len(self.words)


def _power_matrix(spec: RSSpec) -> np.ndarray:
    """pw[i, j] = alpha_j^i mod q, shape (k, n)."""
    pw = np.ones((spec.k, spec.n), dtype=np.int64)
    alpha = np.array(spec.eval_points, dtype=np.int64)
    for i in range(1, spec.k):
        pw[i] = (pw[i - 1] * alpha) % spec.q
    return pw


def rs_codeword_matrix(spec: RSSpec, cap: int = DEFAULT_ENUM_CAP) -> np.ndarray:
    """All q^k codewords as an array of shape (q^k, n), coefficient-lex order."""
    total = spec.q**spec.k
    if total > cap:
        raise ResourceCapError(f"q^k = {spec.q}^{spec.k} = {total} exceeds cap {cap}")
    # Row r encodes coefficients (c_0, ..., c_{k-1}) = digits of r, c_0 major.
    coeffs = np.empty((total, spec.k), dtype=np.int64)
    r = np.arange(total)
    for i in range(spec.k):
        coeffs[:, i] = (r // spec.q ** (spec.k - 1 - i)) % spec.q
    return (coeffs @ _power_matrix(spec)) % spec.q


def rs_generate(spec: RSSpec, cap: int = DEFAULT_ENUM_CAP) -> list[Word]:
    """All q^k codewords (f(a_1), ..., f(a_n)) for deg f < k, in generation order."""
    mat = rs_codeword_matrix(spec, cap=cap)
    return [Word(tuple(row), spec.q) for row in mat.tolist()]


def count_lambda_repeating(spec: RSSpec, lam: int, cap: int = DEFAULT_ENUM_CAP) -> int:
    """Number of codewords with two equal length-lam windows.

    For 1 <= lam <= (k-1)/2 this is at most C(n,2) q^{k-lam}; the raw count
    works for any lam <= n.
    """
    if not 1 <= lam <= spec.n:
        raise ValueError(f"lambda={lam} out of [1, n]")
    mat = rs_codeword_matrix(spec, cap=cap)
    repeating = np.zeros(mat.shape[0], dtype=bool)
    wins = spec.n - lam + 1
    for i, j in itertools.combinations(range(wins), 2):
        same = (mat[:, i : i + lam] == mat[:, j : j + lam]).all(axis=1)
        repeating |= same
    return int(repeating.sum())


def gamma_degree_bound(n: int, d: int) -> int:
    """q-independent bound on the max degree of the RS conflict graph: C(n, n-d/2+1)^2."""
    if not 4 <= d <= 2 * n - 2 or d % 2 != 0:
        raise ValueError(f"need even 4 <= d <= 2n-2, got d={d}")
    return binomial(n, n - d // 2 + 1) ** 2


def neighborhood_edge_bound(n: int, d: int) -> BoundValue:
    """2^{5(d-2)} d (e*n/(d-2))^{(3d-6)/2}: edges inside any conflict neighborhood.

    Stated for 6 <= d <= n/9 + 2; outside that window the value is still
    evaluable and flagged report-only.  Always an estimate (contains e).
    """
    if d % 2 != 0 or d < 4:
        raise ValueError(f"need even d >= 4, got d={d}")
    exponent = (3 * d - 6) // 2
    value = (
        Fraction(2) ** (5 * (d - 2))
        * d
        * Fraction(_euler) ** exponent
        * Fraction(n, d - 2) ** exponent
    )
    in_domain = 6 <= d <= Fraction(n, 9) + 2
    note = "within stated domain" if in_domain else "report-only: d outside [6, n/9+2]"
    return BoundValue(
        "gamma_neighborhood_edges",
        BoundKind.ESTIMATE,
        value,
        note=note,
        target="gamma_neighborhood_edges",
    )


def construct_insdel_code_rs(
    spec: RSSpec,
    d: int,
    lam: int = DEFAULT_LAMBDA,
    cap: int = DEFAULT_GREEDY_CAP,
) -> Code:
    """Greedy independent set among lambda-nonrepeating RS codewords.

    Requires k = n - d/2 + 1 so that distinct accepted words can reach edit
    distance d at all.  Acceptance order is generation order; every accepted
    word is explicitly checked against all previous ones, so the returned
    code is verified at distance d by construction.
    """
    if d % 2 != 0 or not 4 <= d <= 2 * spec.n - 2:
        raise ValueError(f"need even 4 <= d <= 2n-2, got d={d}")
    expected_k = spec.n - d // 2 + 1
    if spec.k != expected_k:
        raise ValueError(f"spec.k={spec.k} but construction needs k = n-d/2+1 = {expected_k}")
    if not 1 <= lam <= spec.n:
        raise ValueError(f"lambda={lam} out of [1, n]")
    mat = rs_codeword_matrix(spec, cap=cap)
    min_lcs = spec.n - d // 2
    accepted: list[tuple[int, ...]] = []
    for row in mat.tolist():
        w = tuple(row)
        if not is_lambda_nonrepeating(Word(w, spec.q), lam):
            continue
        if all(lcs_tuples(w, prev) <= min_lcs for prev in accepted):
            accepted.append(w)
    return Code(
        words=tuple(Word(w, spec.q) for w in accepted),
        n=spec.n,
        q=spec.q,
        verified_min_edit_distance=d,
        provenance=f"rs-independent-set(q={spec.q}, n={spec.n}, k={spec.k}, lambda={lam})",
    )


@dataclass
class VerifyResult:
    ok: bool
    min_distance: int
    witness: tuple[Word, Word] | None = None


def verify_code_distance(code: Code, d: int) -> VerifyResult:
    """Exact pairwise minimum edit distance; ok iff it is >= d.

    A code with fewer than two words is vacuously ok; its minimum distance is
    reported as the sentinel 2n+1 ("infinite").
    """
    words = code.words
    if len(words) < 2:
        return VerifyResult(ok=True, min_distance=2 * code.n + 1)
    best: int | None = None
    pair: tuple[Word, Word] | None = None
    for x, y in itertools.combinations(words, 2):
        dist = edit_distance(x, y)
        if best is None or dist < best:
            best, pair = dist, (x, y)
    assert best is not None
    return VerifyResult(ok=best >= d, min_distance=best, witness=None if best >= d else pair)


# ---------------------------------------------------------------------------
# Code file format: "q n [d]" header line, one codeword per line.
# ---------------------------------------------------------------------------


def write_code_file(path: str | Path, code: Code, d: int | None = None) -> None:
    header = f"{code.q} {code.n}" + (f" {d}" if d is not None else "")
    lines = [header] + [str(w) for w in code.words]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


class CodeFileError(ValueError):
    """Raised with a 1-based line number when a code file fails to parse."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


def read_code_file(path: str | Path) -> tuple[Code, int | None]:
    """Parse a code file; returns (code, declared distance or None)."""
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise CodeFileError(1, "missing header 'q n [d]'")
    head = lines[0].split()
    if len(head) not in (2, 3):
        raise CodeFileError(1, f"header must be 'q n [d]', got {lines[0]!r}")
    try:
        q, n = int(head[0]), int(head[1])
        d = int(head[2]) if len(head) == 3 else None
    except ValueError as exc:
        raise CodeFileError(1, f"non-integer header field: {exc}") from exc
    if q < 2 or n < 0:
        raise CodeFileError(1, f"invalid header values q={q}, n={n}")
    words = []
    for idx, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            symbols = tuple(int(tok) for tok in line.split())
        except ValueError as exc:
            raise CodeFileError(idx, f"non-integer symbol: {exc}") from exc
        if len(symbols) != n:
            raise CodeFileError(idx, f"expected {n} symbols, got {len(symbols)}")
        if any(not 0 <= s < q for s in symbols):
            raise CodeFileError(idx, f"symbol out of range [0, {q}) in {line!r}")
        words.append(Word(symbols, q))
    return Code(words=tuple(words), n=n, q=q, provenance=f"file:{path}"), d
