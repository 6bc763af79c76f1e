"""Closed-form certified upper bounds on D_q(n, d).

Each bound evaluates its validity conditions before any arithmetic and
returns a structured not-applicable value outside its domain, so tables
render cleanly.  Floors appear only where a published formula itself floors;
otherwise rounding happens once, in BoundValue.integer_value.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .combinat import binomial
from .core import BoundKind, BoundValue, Params

__all__ = [
    "levenshtein_upper",
    "levenshtein_upper_best",
    "levenshtein_envelope",
    "bours_upper",
    "kulkarni_kiyavash_upper",
    "dual_closed_form_upper",
    "liu_xing_upper",
    "improved_liu_xing_upper",
    "recursive_upper",
    "liu_et_al_upper",
    "all_upper_bounds",
    "best_upper",
]


def levenshtein_upper(p: Params, r: int) -> BoundValue:
    """Levenshtein's sphere-packing bound at radius parameter r.

    Valid for 4 <= d <= 2n-2 and d/2 - 2 <= r <= n - 1.
    """
    n, q, d = p.n, p.q, p.d
    if not 4 <= d <= 2 * n - 2:
        return BoundValue.not_applicable("levenshtein", f"needs 4 <= d <= 2n-2, got d={d}")
    if not d // 2 - 2 <= r <= n - 1:
        return BoundValue.not_applicable(
            "levenshtein", f"r={r} outside [d/2-2, n-1]=[{d // 2 - 2}, {n - 1}]"
        )
    denom = sum(binomial(r + 2 - d // 2, i) for i in range(d // 2))
    first = Fraction(q ** (n - d // 2 + 1), denom)
    second = q * sum(binomial(n - 1, i) * (q - 1) ** i for i in range(r))
    return BoundValue(
        "levenshtein", BoundKind.CERTIFIED_UPPER, first + second, note=f"r={r}"
    )


def levenshtein_upper_best(p: Params) -> BoundValue:
    """Minimum of Levenshtein's bound over all admissible r."""
    n, d = p.n, p.d
    if not 4 <= d <= 2 * n - 2:
        return BoundValue.not_applicable("levenshtein_best", f"needs 4 <= d <= 2n-2, got d={d}")
    best: BoundValue | None = None
    best_r = None
    for r in range(max(0, d // 2 - 2), n):
        cand = levenshtein_upper(p, r)
        if cand.applicable and (best is None or cand.value < best.value):  # type: ignore[operator]
            best, best_r = cand, r
    assert best is not None
    return BoundValue(
        "levenshtein_best", BoundKind.CERTIFIED_UPPER, best.value, note=f"r={best_r}"
    )


def levenshtein_envelope(p: Params) -> Fraction | None:
    """Lower envelope of Levenshtein's bound family (comparison quantity only).

    Combines the smallest possible first term (r = n-1) with the smallest
    possible second term (r = d/2-2); every actual radius choice is >= this,
    so beating the envelope beats the whole family.  Not itself a bound.
    """
    n, q, d = p.n, p.q, p.d
    if not 4 <= d <= 2 * n - 2:
        return None
    first = Fraction(
        q ** (n - d // 2 + 1), sum(binomial(n + 1 - d // 2, i) for i in range(d // 2))
    )
    second = q * sum(binomial(n - 1, i) * (q - 1) ** i for i in range(d // 2 - 2))
    return first + second


def bours_upper(n: int, q: int) -> BoundValue:
    """Design-theoretic bound on D_q(n, 2n-2): floor(q/n * floor(2(q-1)/(n-1))) + q."""
    if n < 2 or q < 2:
        return BoundValue.not_applicable("bours", f"needs n, q >= 2, got n={n}, q={q}")
    inner = (2 * (q - 1)) // (n - 1)
    value = (q * inner) // n + q
    return BoundValue("bours", BoundKind.CERTIFIED_UPPER, Fraction(value), note="d=2n-2")


def _delta(x: int, y: int) -> int:
    """Piecewise sphere-size lower bound used by the hypergraph-covering bound.

    For x > y >= 0 equals sum_{i=0}^{y} C(x-y, i); 1 when x = y >= 0 (which
    the sum also gives); 0 when y < 0 or y > x.
    """
    if y < 0 or y > x:
        return 0
    return sum(binomial(x - y, i) for i in range(y + 1))


def kulkarni_kiyavash_upper(p: Params) -> BoundValue:
    """Hypergraph fractional-covering bound, valid for 4 <= d <= n+1.

    Terms are grouped by the run count r of the packed subsequences.  If some
    term's covering denominator degenerates to zero (possible for d >= 10 at
    small r, where both the leading sphere-size bound and the correction sum
    vanish), the published formula is undefined there and the bound is
    reported not applicable rather than silently patched.
    """
    n, q, d = p.n, p.q, p.d
    if not 4 <= d <= n + 1:
        return BoundValue.not_applicable("kulkarni_kiyavash", f"needs 4 <= d <= n+1, got d={d}")
    t = d // 2 - 1
    total = Fraction(q * sum(binomial(n - d // 2, r - 1) * (q - 1) ** (r - 1) for r in (1, 2)))
    for r in range(3, n - d // 2 + 2):
        numer = q * (q - 1) ** (r - 1) * binomial(n - d // 2, r - 1)
        denom = _delta(r, t) + sum(
            _delta(r - 2, i) for i in range(d + r - n - 3, min(d // 2 - 3, r - 3) + 1)
        )
        if denom == 0:
            if numer == 0:
                continue
            return BoundValue.not_applicable(
                "kulkarni_kiyavash",
                f"covering denominator vanishes at run count r={r}; formula undefined",
            )
        total += Fraction(numer, denom)
    return BoundValue("kulkarni_kiyavash", BoundKind.CERTIFIED_UPPER, total)


def dual_closed_form_upper(p: Params) -> BoundValue:
    """Closed-form evaluation of the packing-LP dual certificates.

    Three regimes: d = 2n-2 gives q + 2q(q-1)/(n(n-1)); d = 2n-4 gives
    3q^2 - q + q(q-1)(q-2)/C(n,3); for 4 <= d <= 2n-6 the general form needs
    q > n - d/2 (the simplification divides by q - (n - d/2)); below that the
    exact LP route still applies, only this closed form does not.
    """
    n, q, d = p.n, p.q, p.d
    name = "dual_closed_form"
    if not 4 <= d <= 2 * n - 2:
        return BoundValue.not_applicable(name, f"needs 4 <= d <= 2n-2, got d={d}")
    if d == 2 * n - 2:
        value = q + Fraction(2 * q * (q - 1), n * (n - 1))
        return BoundValue(name, BoundKind.CERTIFIED_UPPER, value, note="d=2n-2 form")
    if d == 2 * n - 4:
        value = 3 * q * q - q + Fraction(q * (q - 1) * (q - 2), binomial(n, 3))
        return BoundValue(name, BoundKind.CERTIFIED_UPPER, value, note="d=2n-4 form")
    s = n - d // 2  # >= 3 here
    if q <= s:
        return BoundValue.not_applicable(
            name, f"general form needs q > n-d/2 (q={q}, n-d/2={s}); use the LP optimum"
        )
    prod = 1
    for i in range(s + 1):
        prod *= q - i
    main = Fraction(prod, binomial(n, s + 1)) * (1 + Fraction((s + 1) * (n - 1), 2 * (q - s)))
    jlo = (s + 2) // 2
    correction = Fraction(0)
    for j in range(jlo + 1, s):
        correction += Fraction(
            binomial(q, j) * j ** (s + 1), binomial(n + 2 * j - 2 * (s + 1), 2 * j - (s + 1))
        )
    for j in range(1, jlo + 1):
        correction += binomial(q, j) * j ** (s + 1)
    return BoundValue(name, BoundKind.CERTIFIED_UPPER, main + correction, note="general form")


def liu_xing_upper(p: Params) -> BoundValue:
    """Singleton-type bounds: exact endpoints and two power-of-q upper bounds.

    D_q(n,2) = q^n and D_q(n,2n) = q are exact; otherwise the bound is
    (q^{n-d/2+1} + q^{n-d/2})/2, improved to q^{n-d/2} once 2q <= d.
    """
    n, q, d = p.n, p.q, p.d
    if d == 2:
        return BoundValue("liu_xing", BoundKind.EXACT, Fraction(q**n), note="d=2 exact")
    if d == 2 * n:
        return BoundValue("liu_xing", BoundKind.EXACT, Fraction(q), note="d=2n exact")
    half_sum = Fraction(q ** (n - d // 2 + 1) + q ** (n - d // 2), 2)
    if 2 * q <= d:
        power = Fraction(q ** (n - d // 2))
        if power <= half_sum:
            return BoundValue("liu_xing", BoundKind.CERTIFIED_UPPER, power, note="2q<=d power form")
    return BoundValue("liu_xing", BoundKind.CERTIFIED_UPPER, half_sum, note="half-sum form")


def improved_liu_xing_upper(p: Params) -> BoundValue:
    """Recursive improvement of the Singleton-type bound for 4 <= d <= 2n-4.

    q^{n-d/2-1} * min{ floor(2q/(d+2) * floor(4(q-1)/d)) + q,
                       48(q-1)(q-2)/((d+4)(d+2)d) + 3q - 1 }.
    """
    n, q, d = p.n, p.q, p.d
    if not 4 <= d <= 2 * n - 4:
        return BoundValue.not_applicable("improved_liu_xing", f"needs 4 <= d <= 2n-4, got d={d}")
    first = (2 * q * ((4 * (q - 1)) // d)) // (d + 2) + q
    second = Fraction(48 * (q - 1) * (q - 2), (d + 4) * (d + 2) * d) + 3 * q - 1
    value = q ** (n - d // 2 - 1) * min(Fraction(first), second)
    return BoundValue("improved_liu_xing", BoundKind.CERTIFIED_UPPER, value)


def recursive_upper(p: Params, i: int, base: BoundValue) -> BoundValue:
    """Lift a bound on D_q(d/2+i, d) to length n: multiply by q^{n-d/2-i}.

    Requires base.value >= q^i (hypothesis of the length-reduction argument);
    violating it is a caller error, not a not-applicable condition.
    """
    n, q, d = p.n, p.q, p.d
    if not 4 <= d <= 2 * n - 2:
        return BoundValue.not_applicable("recursive", f"needs 4 <= d <= 2n-2, got d={d}")
    if not 1 <= i <= n - d // 2:
        return BoundValue.not_applicable("recursive", f"i={i} outside [1, n-d/2]")
    if base.kind is not BoundKind.CERTIFIED_UPPER or not base.applicable:
        raise ValueError("recursive_upper needs an applicable certified upper base")
    assert base.value is not None
    if base.value < q**i:
        raise ValueError(
            f"recursion hypothesis fails: base value {base.value} < q^i = {q**i}"
        )
    value = q ** (n - d // 2 - i) * base.value
    return BoundValue(
        "recursive", BoundKind.CERTIFIED_UPPER, value, note=f"i={i}, base={base.name}"
    )


def liu_et_al_upper(p: Params) -> BoundValue:
    """q^{n-d/2-d/(2q-2)} (q+2), for q | n and 2q-2 <= d <= 2n-2n/q.

    Exact (certified) only when the exponent d/(2q-2) is an integer; with a
    fractional exponent the value is transcendental and reported as a
    non-certified estimate.
    """
    n, q, d = p.n, p.q, p.d
    name = "liu_et_al"
    if n % q != 0:
        return BoundValue.not_applicable(name, f"needs q | n, got n={n}, q={q}")
    if not 2 * q - 2 <= d <= 2 * n - 2 * n // q:
        return BoundValue.not_applicable(
            name, f"needs 2q-2 <= d <= 2n-2n/q, got d={d}"
        )
    exponent = Fraction(n - d // 2) - Fraction(d, 2 * q - 2)
    if exponent.denominator == 1:
        value = Fraction(q ** int(exponent) * (q + 2))
        return BoundValue(name, BoundKind.CERTIFIED_UPPER, value, note="integral exponent")
    whole = math.floor(exponent)
    fractional = exponent - whole
    approx = Fraction(math.exp(float(fractional) * math.log(q)))
    value = Fraction(q) ** whole * (q + 2) * approx
    return BoundValue(
        name,
        BoundKind.ESTIMATE,
        value,
        note=f"non-integral exponent {exponent}; value q^{exponent}*(q+2) is not rational",
    )


def all_upper_bounds(p: Params) -> list[BoundValue]:
    """Every closed-form upper bound of this module at the given parameters."""
    bours = (
        bours_upper(p.n, p.q)
        if p.d == 2 * p.n - 2
        else BoundValue.not_applicable("bours", "applies to d = 2n-2 only")
    )
    return [
        levenshtein_upper_best(p),
        bours,
        kulkarni_kiyavash_upper(p),
        dual_closed_form_upper(p),
        liu_xing_upper(p),
        improved_liu_xing_upper(p),
        liu_et_al_upper(p),
    ]


def best_upper(p: Params) -> BoundValue:
    """Minimum integer value over all applicable certified/exact upper bounds."""
    candidates = [
        b
        for b in all_upper_bounds(p)
        if b.applicable and b.kind in (BoundKind.CERTIFIED_UPPER, BoundKind.EXACT)
    ]
    if not candidates:
        return BoundValue.not_applicable("best_upper", "no applicable certified upper bound")
    best = min(c.integer_value for c in candidates)  # type: ignore[type-var]
    winners = [c.name for c in candidates if c.integer_value == best]
    exact = any(
        c.kind is BoundKind.EXACT and c.integer_value == best for c in candidates
    )
    kind = BoundKind.EXACT if exact else BoundKind.CERTIFIED_UPPER
    return BoundValue("best_upper", kind, Fraction(best), note="from " + ", ".join(winners))
