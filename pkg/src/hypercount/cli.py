"""Command line entry point.

Exit codes: 0 success / all PASS, 1 domain-negative result, 2 usage or parse
error, 3 a lemma verifier reported FAIL. ``decompose`` uses 2 for "pipeline
diagnostic, fallback decomposition used".
"""

from __future__ import annotations

import argparse
import json
import sys

from .constructions import (
    DegenerateSpecWarning,
    ExtremalSpec,
    build_A,
    co_norm_A_closed,
    size_A,
    sunflower_count_A_closed,
)
from .core import Family, FamilyFormatError, co_norm, max_codegree, read_family, sunflower_count
from .matching import cover_number, matching_number
from .search import Objective, SearchGuardError, exhaustive_max, hill_climb, threshold_scan
from .stability import Diagnostic, stability_decompose, stars_cover

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_FAIL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _text_record(record: dict) -> str:
    return "".join(f"{key}: {json.dumps(record[key], sort_keys=True)}\n" for key in sorted(record))


def cmd_construct(args) -> int:
    import warnings

    spec = ExtremalSpec(args.n, args.k, args.s, args.i)
    if args.sizes_only:
        record = {"n": spec.n, "k": spec.k, "s": spec.s, "i": spec.i, "size": str(size_A(spec))}
        if spec.k >= 2:
            record["p"] = args.p
            record["l"] = args.l
            record["co_p"] = str(co_norm_A_closed(spec, args.p))
            record["sunflowers_l"] = str(sunflower_count_A_closed(spec, args.l))
        record["degenerate"] = spec.degenerate
        _emit(args, _text_record(record) if args.format == "text" else _dump(record))
        return EXIT_OK
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateSpecWarning)
        H = build_A(spec)
    if spec.degenerate:
        print(f"warning: degenerate parameters, window [{spec.window}] exceeds [{spec.n}]", file=sys.stderr)
    _emit(args, H.to_text())
    return EXIT_OK


def stats_record(H: Family, ps, ls) -> dict:
    record = {
        "n": H.n,
        "k": H.k,
        "edges": len(H),
        "nu": matching_number(H),
        "cover": cover_number(H),
    }
    if H.k >= 2:
        record["delta"] = max_codegree(H)
        record["co"] = {str(p): str(co_norm(H, p)) for p in ps}
        record["sunflowers"] = {str(l): str(sunflower_count(H, l)) for l in ls}
    return record


def cmd_stats(args) -> int:
    H = read_family(args.family)
    for l in args.l:
        if l < 2:
            raise UsageError("--l values must be >= 2")
    for p in args.p:
        if p < 0:
            raise UsageError("--p values must be >= 0")
    record = stats_record(H, args.p, args.l)
    _emit(args, _text_record(record) if args.format == "text" else _dump(record))
    return EXIT_OK


def cmd_decompose(args) -> int:
    H = read_family(args.family)
    s = args.s
    if s < 0:
        raise UsageError("--s must be >= 0")
    nu = matching_number(H)
    if nu > s:
        _emit(args, _dump({"diagnostic": f"matching number {nu} exceeds s={s}; not decomposable"}))
        return EXIT_NEGATIVE
    result = stability_decompose(H, nu)
    if not isinstance(result, Diagnostic):
        _emit(args, _dump(result.to_json()))
        return EXIT_OK
    fallback = stars_cover(H, s)
    if fallback is None:
        _emit(args, _dump({"diagnostic": f"{result}; no cover by {s} centres exists"}))
        return EXIT_NEGATIVE
    out = fallback.to_json()
    out["diagnostic"] = str(result)
    _emit(args, _dump(out))
    return 2


def cmd_search(args) -> int:
    obj = Objective.parse(args.objective)
    if args.method == "exhaustive":
        report = exhaustive_max(args.n, args.k, args.s, obj)
    else:
        report = hill_climb(
            args.n, args.k, args.s, obj, seed=args.seed, restarts=args.restarts, steps=args.steps, threads=args.threads
        )
    _emit(args, _dump(report.to_json()))
    return EXIT_OK


def cmd_threshold(args) -> int:
    obj = Objective.parse(args.objective)
    rows = threshold_scan(args.k, args.s, obj, args.n_from, args.n_to)
    if args.format == "json":
        payload = [{"n": r.n, "value_H": str(r.value_H), "value_Ak": str(r.value_Ak), "winner": r.winner} for r in rows]
        _emit(args, _dump(payload))
    else:
        _emit(args, "n,value_H,value_Ak,winner\n" + "".join(r.csv() + "\n" for r in rows))
    return EXIT_OK


def cmd_verify_lemmas(args) -> int:
    from .lemmas import run_lemma_grid

    results = run_lemma_grid(args.grid, seed=args.seed)
    _emit(args, "".join(r.line() + "\n" for r in results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypercount", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help: str, fmt: str = "json") -> argparse.ArgumentParser:
        # Built per subcommand: argparse parents share action objects, so
        # per-command format defaults would leak between them.
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=["json", "csv", "text"], default=fmt)
        p.add_argument("--output", help="write to this path instead of stdout")
        return p

    p = command("construct", "emit A(n,k,s,i) (H when i=1)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--sizes-only", action="store_true", help="closed-form record instead of the family")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--l", type=int, default=2)
    p.set_defaults(func=cmd_construct)

    p = command("stats", "codegree statistics of a family file")
    p.add_argument("family")
    p.add_argument("--p", type=int, nargs="+", default=[1, 2])
    p.add_argument("--l", type=int, nargs="+", default=[2])
    p.set_defaults(func=cmd_stats)

    p = command("decompose", "split a family into at most s stars")
    p.add_argument("family")
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(func=cmd_decompose)

    p = command("search", "maximise an objective subject to nu <= s")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--objective", default="size", help="size | co:p | sunflower:l")
    p.add_argument("--method", choices=["exhaustive", "hill"], default="exhaustive")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--restarts", type=int, default=100)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_search)

    p = command("threshold", "H(n,k,s) vs A(n,k,s,k) over a range of n", fmt="csv")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--objective", default="size")
    p.add_argument("--n-from", type=int, required=True)
    p.add_argument("--n-to", type=int, required=True)
    p.set_defaults(func=cmd_threshold)

    p = command("verify-lemmas", "run the lemma grid, one PASS/FAIL line each", fmt="text")
    p.add_argument("--grid", choices=["small", "full"], default="small")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_lemmas)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FamilyFormatError, SearchGuardError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
