"""Shared value types: instance parameters and tagged bound values.

Every bound in this package is reported as a :class:`BoundValue`.  Certified
bounds (proved inequalities on D_q(n,d)) carry exact rational values; main
terms of asymptotic statements are tagged ``ESTIMATE`` and are never allowed
to masquerade as certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction


class ResourceCapError(Exception):
    """An enumeration would exceed the configured size cap."""


class BoundKind(str, Enum):
    CERTIFIED_UPPER = "certified_upper"
    CERTIFIED_LOWER = "certified_lower"
    ESTIMATE = "estimate"
    EXACT = "exact"


@dataclass(frozen=True)
class Params:
    """An instance (n, q, d): length, alphabet size, even edit distance.

    Edit distance between distinct equal-length words is always even and
    positive, so d is restricted to even values in [2, 2n].  Odd inputs are
    normalized by :func:`normalize_params`.
    """

    n: int
    q: int
    d: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.q < 2:
            raise ValueError(f"q must be >= 2, got {self.q}")
        if self.d % 2 != 0:
            raise ValueError(f"d must be even, got {self.d}")
        if not 2 <= self.d <= 2 * self.n:
            raise ValueError(f"d must be in [2, 2n]=[2, {2 * self.n}], got {self.d}")

    @property
    def half_d(self) -> int:
        return self.d // 2

    @property
    def correctable_deletions(self) -> int:
        """Number of deletions an (n,d)_q insdel code corrects: d/2 - 1."""
        return self.d // 2 - 1

    @property
    def packing_margin(self) -> int:
        """n - d/2; the LP family bounds D_q(n, 2n - 2*margin)."""
        return self.n - self.d // 2


def normalize_params(n: int, q: int, d: int) -> tuple[Params, bool]:
    """Build Params, rounding an odd d up to d+1.

    Equal-length words sit at even edit distance, so D_q(n, 2t-1) = D_q(n, 2t);
    returns (params, was_normalized).
    """
    if d % 2 != 0:
        return Params(n, q, d + 1), True
    return Params(n, q, d), False


@dataclass(frozen=True)
class BoundValue:
    """A named bound result with certification kind and exact value.

    ``applicable=False`` means the bound's validity conditions fail at these
    parameters; then ``value`` is None and ``note`` says why.  ``target``
    distinguishes bounds on D_q(n,d) from structural diagnostics (e.g. degree
    bounds of conflict graphs).
    """

    name: str
    kind: BoundKind | None
    value: Fraction | None
    applicable: bool = True
    note: str = ""
    target: str = "D"
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.applicable and self.value is None:
            raise ValueError(f"applicable bound {self.name!r} must carry a value")
        if not self.applicable and self.value is not None:
            raise ValueError(f"inapplicable bound {self.name!r} must not carry a value")

    @property
    def integer_value(self) -> int | None:
        """Floor for upper bounds, ceiling for lower bounds, exact otherwise.

        Estimates have no certified rounding direction and report None.
        """
        if not self.applicable or self.value is None:
            return None
        if self.kind is BoundKind.CERTIFIED_UPPER:
            return math.floor(self.value)
        if self.kind is BoundKind.CERTIFIED_LOWER:
            return math.ceil(self.value)
        if self.kind is BoundKind.EXACT:
            if self.value.denominator != 1:
                raise ValueError(f"exact bound {self.name!r} has non-integer value {self.value}")
            return int(self.value)
        return None

    @staticmethod
    def not_applicable(name: str, note: str, target: str = "D") -> "BoundValue":
        return BoundValue(name=name, kind=None, value=None, applicable=False, note=note, target=target)
