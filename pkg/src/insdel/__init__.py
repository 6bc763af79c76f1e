"""Exact bounds, constructions, and small-instance values for q-ary insdel codes.

D_q(n, d) is the maximum size of a length-n code over a q-ary alphabet whose
distinct codewords are at edit (insertion/deletion) distance at least d.
This package evaluates certified upper and lower bounds on D_q(n, d) in exact
rational arithmetic, solves the underlying sphere-packing linear program with
an exact simplex, builds explicit codes (greedy hypergraph matching and
Reed-Solomon independent sets) with verified distance, and computes exact
values for small instances by branch-and-bound.
"""

__version__ = "0.1.0"

from .core import BoundKind, BoundValue, Params, ResourceCapError, normalize_params

__all__ = [
    "BoundKind",
    "BoundValue",
    "Params",
    "ResourceCapError",
    "normalize_params",
    "__version__",
]
