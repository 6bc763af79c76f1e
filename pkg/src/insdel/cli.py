"""Command-line interface: bound tables, exact solves, constructions, verification.

Subcommands: ``bounds``, ``exact``, ``construct``, ``verify``, ``table``.
Exit codes: 0 success, 2 usage error, 3 resource cap exceeded, 4 verification
failure.  Exact values are cached in a JSON-lines file (path from the
DQ_CACHE environment variable, default ./dq_cache.jsonl); rationals are
serialized as decimal-string numerator/denominator pairs, never floats.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .core import BoundKind, BoundValue, Params, ResourceCapError, normalize_params
from .exact_solver import DEFAULT_VERTEX_CAP, SolveLimits, exact_D
from .lower_bounds import (
    HypergraphSpec,
    greedy_matching_code,
    gv_lower,
    matching_main_term,
    refined_gv_estimate,
)
from .lp_bound import lp_upper
from .rs_construct import (
    Code,
    CodeFileError,
    construct_insdel_code_rs,
    gamma_degree_bound,
    neighborhood_edge_bound,
    read_code_file,
    rs_spec,
    verify_code_distance,
    write_code_file,
)
from .combinat import is_prime
from .upper_bounds import (
    all_upper_bounds,
    best_upper,
    kulkarni_kiyavash_upper,
    dual_closed_form_upper,
    levenshtein_envelope,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_VERIFY = 4

DEFAULT_CACHE = "./dq_cache.jsonl"


def fraction_json(x: Fraction) -> dict[str, str]:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def fraction_from_json(obj: dict[str, str]) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def bound_json(b: BoundValue) -> dict:
    out: dict = {
        "name": b.name,
        "kind": b.kind.value if b.kind is not None else None,
        "applicable": b.applicable,
        "target": b.target,
        "note": b.note,
    }
    if b.value is not None:
        out["value"] = fraction_json(b.value)
        if b.integer_value is not None:
            out["integer"] = b.integer_value
    return out


def collect_bounds(p: Params) -> list[BoundValue]:
    """All bounds and diagnostics the tool reports for one parameter point."""
    out = list(all_upper_bounds(p))
    out.append(lp_upper(p))
    out.append(best_upper(p))
    out.append(gv_lower(p))
    out.append(matching_main_term(p))
    out.append(refined_gv_estimate(p))
    if 4 <= p.d <= 2 * p.n - 2:
        out.append(
            BoundValue(
                "gamma_degree",
                BoundKind.CERTIFIED_UPPER,
                Fraction(gamma_degree_bound(p.n, p.d)),
                note="max degree of the RS conflict graph",
                target="gamma_max_degree",
            )
        )
        out.append(neighborhood_edge_bound(p.n, p.d))
    return out


def _certified_only(bounds: list[BoundValue]) -> list[BoundValue]:
    return [
        b
        for b in bounds
        if b.applicable and b.kind in (BoundKind.CERTIFIED_UPPER, BoundKind.CERTIFIED_LOWER, BoundKind.EXACT)
    ]


def _print_bounds_table(p: Params, bounds: list[BoundValue]) -> None:
    print(f"bounds for n={p.n} q={p.q} d={p.d}")
    header = f"{'name':<24} {'kind':<16} {'value':<24} {'integer':<8} note"
    print(header)
    print("-" * len(header))
    for b in bounds:
        if not b.applicable:
            print(f"{b.name:<24} {'n/a':<16} {'-':<24} {'-':<8} {b.note}")
            continue
        kind = b.kind.value if b.kind else "?"
        val = str(b.value)
        if b.kind is BoundKind.ESTIMATE:
            val = f"~{float(b.value):.6g}"
        integer = "-" if b.integer_value is None else str(b.integer_value)
        note = b.note if b.target == "D" else f"[{b.target}] {b.note}"
        print(f"{b.name:<24} {kind:<16} {val:<24} {integer:<8} {note}")


def cmd_bounds(args: argparse.Namespace) -> int:
    p, warned = normalize_params(args.n, args.q, args.d)
    if warned:
        print(f"warning: odd d={args.d} normalized to d={p.d} (equal-length edit distance is even)")
    bounds = collect_bounds(p)
    if args.certified_only:
        bounds = _certified_only(bounds)
    if args.format == "json":
        payload = {
            "n": p.n,
            "q": p.q,
            "d": p.d,
            "normalized_from_odd_d": warned,
            "bounds": [bound_json(b) for b in bounds],
        }
        print(json.dumps(payload, indent=2))
    else:
        _print_bounds_table(p, bounds)
    return EXIT_OK


# ---------------------------------------------------------------------------
# exact + cache
# ---------------------------------------------------------------------------


def cache_path() -> Path:
    return Path(os.environ.get("DQ_CACHE", DEFAULT_CACHE))


def cache_lookup(p: Params) -> dict | None:
    path = cache_path()
    if not path.exists():
        return None
    hit = None
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError:
            continue
        if (
            rec.get("record") == "exact"
            and rec.get("n") == p.n
            and rec.get("q") == p.q
            and rec.get("d") == p.d
            and rec.get("complete")
        ):
            hit = rec
    return hit


def cache_append(rec: dict) -> None:
    path = cache_path()
    with path.open("a", encoding="utf-8") as fh:
        fh.write(json.dumps(rec) + "\n")


def _witness_from_record(rec: dict, p: Params) -> Code:
    from .words import Word

    words = tuple(
        Word(tuple(int(t) for t in line.split()), p.q) for line in rec["witness"]
    )
    return Code(
        words=words,
        n=p.n,
        q=p.q,
        verified_min_edit_distance=p.d,
        provenance="cache",
    )


def cmd_exact(args: argparse.Namespace) -> int:
    p, warned = normalize_params(args.n, args.q, args.d)
    if warned:
        print(f"warning: odd d={args.d} normalized to d={p.d}")
    if not args.no_cache:
        rec = cache_lookup(p)
        if rec is not None:
            print(f"D_{p.q}({p.n},{p.d}) = {rec['value']} (cache hit)")
            if args.out:
                write_code_file(args.out, _witness_from_record(rec, p), d=p.d)
                print(f"witness written to {args.out}")
            return EXIT_OK
    limits = SolveLimits(
        vertex_cap=args.cap, time_budget=args.time_budget, allow_incomplete=True
    )
    try:
        result = exact_D(p, limits)
    except ResourceCapError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    if result.complete:
        print(f"D_{p.q}({p.n},{p.d}) = {result.value}")
    else:
        print(f"D_{p.q}({p.n},{p.d}) >= {result.value} (search incomplete: lower witness only)")
    if args.out:
        write_code_file(args.out, result.witness, d=p.d)
        print(f"witness written to {args.out}")
    cache_append(
        {
            "record": "exact",
            "n": p.n,
            "q": p.q,
            "d": p.d,
            "value": result.value,
            "complete": result.complete,
            "witness": [str(w) for w in result.witness.words],
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "tool_version": __version__,
        }
    )
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    p, warned = normalize_params(args.n, args.q, args.d)
    if warned:
        print(f"warning: odd d={args.d} normalized to d={p.d}")
    try:
        if args.method == "greedy-hypergraph":
            spec = HypergraphSpec(n=p.n, q=p.q, t=p.d // 2 - 1)
            code = greedy_matching_code(spec, cap=args.cap)
        else:
            if not is_prime(p.q):
                print(f"error: rs-independent-set needs prime q, got q={p.q}", file=sys.stderr)
                return EXIT_USAGE
            k = p.n - p.d // 2 + 1
            alpha = None
            if args.alpha:
                alpha = tuple(int(t) for t in args.alpha.split(","))
            try:
                spec = rs_spec(p.q, p.n, k, alpha)
            except ValueError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_USAGE
            code = construct_insdel_code_rs(spec, p.d, lam=args.lam, cap=args.cap)
    except ResourceCapError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    check = verify_code_distance(code, p.d)
    gv = gv_lower(p)
    main = matching_main_term(p)
    print(f"constructed ({p.n},{p.d})_{p.q} code of size {len(code)} via {args.method}")
    print(f"verified min edit distance: {check.min_distance} (ok={check.ok})")
    if gv.applicable:
        print(f"counting lower bound (ceil): {gv.integer_value}")
    if main.applicable:
        print(f"large-q main term: ~{float(main.value):.6g}")
    if args.out:
        write_code_file(args.out, code, d=p.d)
        print(f"code written to {args.out}")
    return EXIT_OK if check.ok else EXIT_VERIFY


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        code, declared = read_code_file(args.file)
    except CodeFileError as exc:
        print(f"parse error in {args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    d = args.d if args.d is not None else declared
    if d is None:
        print("error: no distance given (pass --d or declare it in the file header)", file=sys.stderr)
        return EXIT_USAGE
    result = verify_code_distance(code, d)
    print(f"{len(code)} codewords, min edit distance {result.min_distance}, required {d}")
    if result.ok:
        print("ok")
        return EXIT_OK
    x, y = result.witness  # type: ignore[misc]
    print(f"FAIL: witness pair ({x}) / ({y})")
    return EXIT_VERIFY


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

TABLE_COLUMNS = [
    "n",
    "q",
    "d",
    "gv_lower",
    "gv_lower_ceil",
    "lp_optimum",
    "best_upper",
    "best_upper_sources",
]

COMPARE_COLUMNS = [
    "dual_closed_form",
    "levenshtein_envelope",
    "dual_below_envelope",
    "kulkarni_kiyavash",
    "matching_main_term",
    "kk_above_main_term",
]


def parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        values = list(range(int(lo), int(hi) + 1))
    else:
        values = [int(text)]
    if not values:
        raise ValueError(f"empty range {text!r}")
    return values


def _frac_cell(x: Fraction | None) -> str:
    return "" if x is None else f"{x.numerator}/{x.denominator}"


def table_record(point: tuple[int, int, int], compare: bool) -> dict[str, str]:
    n, q, d = point
    p = Params(n, q, d)
    gv = gv_lower(p)
    lp = lp_upper(p)
    best = best_upper(p)
    rec = {
        "n": str(n),
        "q": str(q),
        "d": str(d),
        "gv_lower": _frac_cell(gv.value if gv.applicable else None),
        "gv_lower_ceil": "" if not gv.applicable else str(gv.integer_value),
        "lp_optimum": _frac_cell(lp.value if lp.applicable else None),
        "best_upper": "" if not best.applicable else str(best.integer_value),
        # semicolons keep multi-source cells one CSV field
        "best_upper_sources": (
            best.note.removeprefix("from ").replace(", ", ";") if best.applicable else ""
        ),
    }
    if compare:
        dual = dual_closed_form_upper(p)
        env = levenshtein_envelope(p)
        kk = kulkarni_kiyavash_upper(p)
        main = matching_main_term(p)
        rec["dual_closed_form"] = _frac_cell(dual.value if dual.applicable else None)
        rec["levenshtein_envelope"] = _frac_cell(env)
        rec["dual_below_envelope"] = (
            "" if not dual.applicable or env is None else str(dual.value < env).lower()
        )
        rec["kulkarni_kiyavash"] = _frac_cell(kk.value if kk.applicable else None)
        rec["matching_main_term"] = _frac_cell(main.value if main.applicable else None)
        rec["kk_above_main_term"] = (
            ""
            if not kk.applicable or not main.applicable
            else str(kk.value >= main.value).lower()
        )
    return rec


def cmd_table(args: argparse.Namespace) -> int:
    try:
        ns, qs, ds = parse_range(args.n), parse_range(args.q), parse_range(args.d)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    points = [
        (n, q, d)
        for n in ns
        for q in qs
        for d in ds
        if d % 2 == 0 and 2 <= d <= 2 * n and n >= 2 and q >= 2
    ]
    if not points:
        print("error: empty parameter range", file=sys.stderr)
        return EXIT_USAGE
    points.sort()
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(table_record, points, [args.compare] * len(points)))
    else:
        records = [table_record(pt, args.compare) for pt in points]
    columns = TABLE_COLUMNS + (COMPARE_COLUMNS if args.compare else [])
    if args.format == "json":
        print(json.dumps({"columns": columns, "rows": records}, indent=2))
    else:
        print(",".join(columns))
        for rec in records:
            print(",".join(rec.get(col, "") for col in columns))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="insdel",
        description="Bounds, exact values and constructions for q-ary insertion-deletion codes.",
    )
    parser.add_argument("--version", action="version", version=f"insdel {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="evaluate all applicable bounds at one point")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--format", choices=("table", "json"), default="table")
    b.add_argument("--certified-only", action="store_true", help="drop estimates")
    b.set_defaults(func=cmd_bounds)

    e = sub.add_parser("exact", help="compute D_q(n,d) exactly (small instances)")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--q", type=int, required=True)
    e.add_argument("--d", type=int, required=True)
    e.add_argument("--out", type=str, default=None, help="write witness code file")
    e.add_argument("--cap", type=int, default=DEFAULT_VERTEX_CAP, help="max q^n")
    e.add_argument("--time-budget", type=float, default=None, help="seconds")
    e.add_argument("--no-cache", action="store_true")
    e.set_defaults(func=cmd_exact)

    c = sub.add_parser("construct", help="build a verified insdel code")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument(
        "--method",
        choices=("greedy-hypergraph", "rs-independent-set"),
        required=True,
    )
    c.add_argument("--lambda", dest="lam", type=int, default=3)
    c.add_argument("--alpha", type=str, default=None, help="comma-separated evaluation points")
    c.add_argument("--out", type=str, default=None)
    c.add_argument("--cap", type=int, default=1 << 14)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check the edit distance of a code file")
    v.add_argument("--file", type=str, required=True)
    v.add_argument("--d", type=int, default=None)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="bound tables over parameter ranges")
    t.add_argument("--n", type=str, required=True, help="value or range a..b")
    t.add_argument("--q", type=str, required=True)
    t.add_argument("--d", type=str, required=True)
    t.add_argument("--compare", action="store_true", help="emit comparison columns")
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.add_argument("--jobs", type=int, default=1)
    t.set_defaults(func=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except ResourceCapError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        code = EXIT_RESOURCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
