"""The sphere-packing linear program and its closed-form dual certificates.

A code with edit distance 2n-2s induces pairwise-disjoint sets of length-(s+1)
subsequences, so counting codewords by symbol-support size yields a small LP
whose exact optimum M certifies D_q(n, 2n-2s) <= M.  The LP is solved with an
exact rational simplex (Bland's rule, deterministic); the known closed-form
dual feasible points are verified explicitly and give independent upper-bound
proofs via weak duality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .combinat import binomial, surjection_count
from .core import BoundKind, BoundValue, Params

AGGREGATE = "aggregate"


def coefficient(i: int, j: int, s: int) -> int:
    """Constraint coefficient a_{i,j} = C(i + j - (s+1), 2j - (s+1))."""
    return binomial(i + j - (s + 1), 2 * j - (s + 1))


def support_class_size(q: int, s: int, j: int) -> int:
    """b_j: number of words in [q]^{s+1} using exactly j distinct symbols."""
    return binomial(q, j) * surjection_count(s + 1, j)


@dataclass(frozen=True)
class Row:
    """One <= constraint: sparse integer coefficients over variables 1..n."""

    label: str | int  # AGGREGATE or the support size j
    coeffs: tuple[tuple[int, int], ...]  # (variable index i, coefficient)
    rhs: int


@dataclass(frozen=True)
class LinearProgram:
    """maximize sum_i x_i subject to rows (<=) and x >= 0."""

    n: int
    q: int
    s: int
    rows: tuple[Row, ...]

    @property
    def num_vars(self) -> int:
        return self.n


def build_lp(n: int, q: int, s: int) -> LinearProgram:
    """Exact LP whose optimum upper-bounds D_q(n, 2n-2s); needs 1 <= s <= n-2.

    Variables x_i count codewords with exactly i distinct symbols.  One
    aggregate row covers supports below ceil((s+1)/2) (skipped for s=1 where
    that index set is empty) and one row per support size j up to s+1.
    """
    if not 1 <= s <= n - 2:
        raise ValueError(f"s={s} out of [1, n-2]=[1, {n - 2}]")
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    jlo = (s + 2) // 2  # ceil((s+1)/2)
    rows: list[Row] = []
    if jlo >= 2:
        agg_rhs = sum(support_class_size(q, s, j) for j in range(1, jlo))
        rows.append(Row(AGGREGATE, tuple((i, 1) for i in range(1, jlo)), agg_rhs))
    for j in range(jlo, s + 2):
        coeffs = tuple(
            (i, coefficient(i, j, s)) for i in range(j, n + j - (s + 1) + 1)
        )
        rows.append(Row(j, coeffs, support_class_size(q, s, j)))
    return LinearProgram(n=n, q=q, s=s, rows=tuple(rows))


# ---------------------------------------------------------------------------
# Exact rational simplex
# ---------------------------------------------------------------------------


def simplex_maximize(
    rows: list[list[Fraction]], rhs: list[Fraction], objective: list[Fraction]
) -> tuple[Fraction, list[Fraction]]:
    """Maximize objective . x subject to rows . x <= rhs, x >= 0, rhs >= 0.

    Dense tableau with Bland's anti-cycling pivot rule; fully deterministic.
    The slack basis is feasible because rhs >= 0.  Raises on unbounded models.
    """
    m = len(rows)
    nv = len(objective)
    if any(b < 0 for b in rhs):
        raise ValueError("simplex_maximize expects rhs >= 0")
    # Tableau columns: nv structural + m slacks + rhs.
    tab = [
        [Fraction(rows[r][c]) for c in range(nv)]
        + [Fraction(int(r == k)) for k in range(m)]
        + [Fraction(rhs[r])]
        for r in range(m)
    ]
    # Objective row stores negated reduced costs.
    z = [-Fraction(c) for c in objective] + [Fraction(0)] * (m + 1)
    basis = [nv + r for r in range(m)]

    while True:
        enter = next((j for j in range(nv + m) if z[j] < 0), None)
        if enter is None:
            break
        # Ratio test; ties broken by smallest basic-variable index (Bland).
        leave = None
        best: Fraction | None = None
        for r in range(m):
            if tab[r][enter] > 0:
                ratio = tab[r][-1] / tab[r][enter]
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):  # type: ignore[index]
                    best = ratio
                    leave = r
        if leave is None:
            raise ArithmeticError("LP is unbounded")
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for r in range(m):
            if r != leave and tab[r][enter] != 0:
                f = tab[r][enter]
                tab[r] = [a - f * b for a, b in zip(tab[r], tab[leave])]
        if z[enter] != 0:
            f = z[enter]
            z = [a - f * b for a, b in zip(z, tab[leave])]
        basis[leave] = enter

    x = [Fraction(0)] * nv
    for r, b in enumerate(basis):
        if b < nv:
            x[b] = tab[r][-1]
    value = sum((Fraction(c) * xi for c, xi in zip(objective, x)), Fraction(0))
    return value, x


def _dense_rows(lp: LinearProgram) -> tuple[list[list[Fraction]], list[Fraction]]:
    rows = []
    rhs = []
    for row in lp.rows:
        dense = [Fraction(0)] * lp.n
        for i, a in row.coeffs:
            dense[i - 1] = Fraction(a)
        rows.append(dense)
        rhs.append(Fraction(row.rhs))
    return rows, rhs


def solve_lp(lp: LinearProgram) -> tuple[Fraction, list[Fraction]]:
    rows, rhs = _dense_rows(lp)
    return simplex_maximize(rows, rhs, [Fraction(1)] * lp.n)


def solve_lp_exact(lp: LinearProgram) -> Fraction:
    """Exact optimum M of the packing LP (D_q(n, 2n-2s) <= M)."""
    return solve_lp(lp)[0]


def lp_upper(p: Params) -> BoundValue:
    """Certified upper bound from the exact LP optimum, for 4 <= d <= 2n-2."""
    s = p.packing_margin
    if not 1 <= s <= p.n - 2:
        return BoundValue.not_applicable("lp_optimum", f"needs 4 <= d <= 2n-2, got d={p.d}")
    value = solve_lp_exact(build_lp(p.n, p.q, s))
    return BoundValue("lp_optimum", BoundKind.CERTIFIED_UPPER, value, note=f"s={s}")


# ---------------------------------------------------------------------------
# Dual certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualCertificate:
    """A candidate dual point: y0 for the aggregate row, y[j] per support row."""

    y0: Fraction
    y: dict[int, Fraction]


def dual_certificate(n: int, q: int, s: int) -> DualCertificate:
    """The closed-form dual feasible point used to prove the packing bound.

    s=1: (y0, y1, y2) = (0, 1, 1/C(n,2)); s=2: (1, y2=1, y3=1/C(n,3));
    s>=3: y0 = 1, y at the lowest support index is 1, the top two indices get
    inverse corner coefficients (with a correction factor at index s) and the
    middle indices get y_j = 1/a_{n+j-(s+1), j}.
    """
    if not 1 <= s <= n - 2:
        raise ValueError(f"s={s} out of [1, n-2]=[1, {n - 2}]")
    a = lambda i, j: coefficient(i, j, s)  # noqa: E731
    if s == 1:
        return DualCertificate(Fraction(0), {1: Fraction(1), 2: Fraction(1, a(n, 2))})
    if s == 2:
        return DualCertificate(Fraction(1), {2: Fraction(1), 3: Fraction(1, a(n, 3))})
    jlo = (s + 2) // 2
    y: dict[int, Fraction] = {jlo: Fraction(1)}
    for j in range(jlo + 1, s):
        y[j] = Fraction(1, a(n + j - (s + 1), j))
    y[s] = Fraction(1, a(n - 1, s)) * (1 - Fraction(a(n - 1, s + 1), a(n, s + 1)))
    y[s + 1] = Fraction(1, a(n, s + 1))
    return DualCertificate(Fraction(1), y)


def dual_objective(lp: LinearProgram, cert: DualCertificate) -> Fraction:
    """(sum of low-support b_j) * y0 + sum_j b_j y_j."""
    total = Fraction(0)
    for row in lp.rows:
        total += Fraction(row.rhs) * (cert.y0 if row.label == AGGREGATE else cert.y[row.label])
    return total


def verify_dual_feasible(lp: LinearProgram, cert: DualCertificate) -> tuple[bool, Fraction]:
    """Check the dual constraints exactly; on success the objective bounds M.

    The dual system, written directly from the packing argument: y >= 0; the
    aggregate multiplier y0 >= 1 whenever the aggregate row exists (s >= 2);
    and for every variable index i the weighted support coefficients covering
    i must reach 1.  Feasibility implies dual_objective >= M by weak duality.
    """
    s = lp.s
    n = lp.n
    jlo = (s + 2) // 2
    expected_keys = set(range(jlo, s + 2))
    if set(cert.y) != expected_keys:
        return False, dual_objective(lp, cert)
    if cert.y0 < 0 or any(v < 0 for v in cert.y.values()):
        return False, dual_objective(lp, cert)
    feasible = True
    if s >= 2 and cert.y0 < 1:
        feasible = False
    flo = (s + 1) // 2  # floor((s+1)/2)
    for i in range(jlo, n - flo + 1):
        total = sum(
            coefficient(i, j, s) * cert.y[j] for j in range(jlo, min(i, s + 1) + 1)
        )
        if total < 1:
            feasible = False
    for i in range(n - flo + 1, n + 1):
        total = sum(
            coefficient(i, j, s) * cert.y[j]
            for j in range(i + s + 1 - n, min(i, s + 1) + 1)
        )
        if total < 1:
            feasible = False
    return feasible, dual_objective(lp, cert)


def dual_constraints_from_primal(lp: LinearProgram) -> list[dict[str | int, int]]:
    """Mechanical dual rows (one per variable): coefficient map, rhs 1.

    Used as a meta-check that the hand-written dual system above agrees with
    LP duality applied to the primal model.
    """
    out: list[dict[str | int, int]] = []
    for i in range(1, lp.n + 1):
        row: dict[str | int, int] = {}
        for r in lp.rows:
            for vi, a in r.coeffs:
                if vi == i and a != 0:
                    row[r.label] = a
        out.append(row)
    return out


def format_lp(lp: LinearProgram) -> str:
    """Plain-text LP-format dump (integer data) for external cross-checking."""
    lines = ["Maximize", " obj: " + " + ".join(f"x{i}" for i in range(1, lp.n + 1))]
    lines.append("Subject To")
    for idx, row in enumerate(lp.rows, start=1):
        scale = lcm(*[Fraction(a).denominator for _, a in row.coeffs], Fraction(row.rhs).denominator)
        terms = " + ".join(f"{a * scale} x{i}" for i, a in row.coeffs if a != 0)
        name = "agg" if row.label == AGGREGATE else f"sup{row.label}"
        lines.append(f" c{idx}_{name}: {terms} <= {row.rhs * scale}")
    lines.append("Bounds")
    for i in range(1, lp.n + 1):
        lines.append(f" 0 <= x{i}")
    lines.append("End")
    return "\n".join(lines) + "\n"
