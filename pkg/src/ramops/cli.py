"""Command-line driver: dimension tables, verification suites, the conjecture
verdict, the Ramanujan polynomials, and cache management.

Exit codes: 0 when every check passes, 1 when a check fails (the report
carries a witness), 2 on usage errors or exceeded resource bounds.
"""

from __future__ import annotations

import argparse
import sys
import time

from .cache import ComponentStore, resolve_cache_dir
from .dual import conjecture_verdict
from .graphalg import ARNOLD_PRESENTATION, R_PRESENTATION, algebra_basis
from .labels import standard_labels
from .ram import (
    DEFAULT_MAX_ARITY,
    ResourceBoundError,
    operad_dims,
    presentation,
)
from .ramanujan import poly_str, predicted_dims, psi
from .reports import all_pass, canonical_json, dims_to_table, make_report, render_pretty
from .suites import SUITES, run_suite

DIMS_OPERADS = ("ram", "poisson", "bessel", "liegriess", "com")


def _store_from_args(args) -> ComponentStore:
    directory = resolve_cache_dir(getattr(args, "cache_dir", None), use_default=True)
    return ComponentStore(directory)


def _emit(report: dict, args) -> None:
    text = canonical_json(report)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if getattr(args, "json", False):
        sys.stdout.write(text)
    else:
        sys.stdout.write(render_pretty(report))


def _prediction_for(which: str, n: int):
    p = psi(n)
    if which == "ram":
        return predicted_dims(n)
    if which == "poisson":
        return {(0, k): c for (i, k), c in p.items() if i == 0}
    if which == "bessel":
        return {(i, i): c for (i, k), c in p.items() if k == 0}
    if which == "com":
        return {(0, 0): 1}
    return None


def cmd_dims(args) -> int:
    store = _store_from_args(args)
    started = time.perf_counter()
    dims = operad_dims(args.operad, args.n, store, max_arity=args.max_arity)
    tables = {f"{args.operad}_dims_n{args.n}": dims_to_table(dims)}
    verdicts = []
    predicted = _prediction_for(args.operad, args.n)
    if predicted is not None:
        tables[f"{args.operad}_predicted_n{args.n}"] = dims_to_table(predicted)
        ok = dims == predicted
        verdicts.append(
            {
                "check": "dims_match_prediction",
                "pass": ok,
                "params": {"operad": args.operad, "n": args.n},
                **(
                    {}
                    if ok
                    else {"witness": {"computed": dims_to_table(dims), "predicted": dims_to_table(predicted)}}
                ),
            }
        )
    report = make_report(
        "dims",
        {"operad": args.operad, "n": args.n},
        verdicts,
        tables,
        presentation_hashes={args.operad: presentation(args.operad).hash},
        timings={"total": time.perf_counter() - started} if args.timings else None,
    )
    _emit(report, args)
    return 0 if all_pass(report) else 1


def cmd_ralg_dims(args) -> int:
    store = _store_from_args(args)
    started = time.perf_counter()
    pres = ARNOLD_PRESENTATION if args.fixture == "arnold" else R_PRESENTATION
    if args.ambient == "full" and args.n > 4 and pres is R_PRESENTATION:
        raise ResourceBoundError("full ambient mode is bounded at n = 4 for the two-color family")
    comp = algebra_basis(pres, standard_labels(args.n), args.ambient, store)
    tables = {f"algebra_dims_n{args.n}_{args.ambient}": dims_to_table(comp.dims)}
    if args.rank_report:
        from .graphalg import ideal_rank_breakdown

        tables["ideal_rank_breakdown"] = ideal_rank_breakdown(
            pres, standard_labels(args.n), args.ambient
        )
    report = make_report(
        "ralg-dims",
        {"n": args.n, "ambient": args.ambient, "fixture": args.fixture},
        [],
        tables,
        presentation_hashes={pres.name: pres.hash},
        timings={"total": time.perf_counter() - started} if args.timings else None,
    )
    _emit(report, args)
    return 0


def cmd_ramanujan(args) -> int:
    p = psi(args.n)
    tables = {
        f"psi_{args.n}": poly_str(p),
        f"predicted_dims_n{args.n}": dims_to_table(predicted_dims(args.n)),
    }
    report = make_report("ramanujan", {"n": args.n}, [], tables)
    _emit(report, args)
    return 0


def cmd_verify(args) -> int:
    store = _store_from_args(args)
    started = time.perf_counter()
    if args.n > args.max_arity:
        raise ResourceBoundError(
            f"arity {args.n} exceeds the configured bound {args.max_arity}"
        )
    verdicts, tables = run_suite(args.suite, args.n, store, trials=args.trials, seed=args.seed)
    report = make_report(
        "verify",
        {"suite": args.suite, "n": args.n, "trials": args.trials},
        verdicts,
        tables,
        seed=args.seed,
        presentation_hashes={
            "ram": presentation("ram").hash,
            R_PRESENTATION.name: R_PRESENTATION.hash,
            ARNOLD_PRESENTATION.name: ARNOLD_PRESENTATION.hash,
        },
        timings={"total": time.perf_counter() - started} if args.timings else None,
    )
    _emit(report, args)
    return 0 if all_pass(report) else 1


def cmd_conjecture(args) -> int:
    store = _store_from_args(args)
    started = time.perf_counter()
    result = conjecture_verdict(args.n, store, max_n=args.max_arity)
    verdicts = [
        {
            "check": "comparison_map_kills_relations",
            "pass": result["relation_kill"],
            "params": {"n": args.n},
            **(
                {}
                if result["relation_kill"]
                else {"witness": result["relation_kill_witness"]}
            ),
        },
        {
            "check": "bigraded_dims_match",
            "pass": result["dims_equal"],
            "params": {"n": args.n},
        },
        {
            "check": "isomorphism_verdict",
            "pass": True,
            "params": {"n": args.n, "isomorphism": result["isomorphism"]},
            "informational": True,
        },
    ]
    tables = {
        f"conjecture_blocks_n{args.n}": [
            [b["h"], b["w"], b["dim_operad"], b["dim_dual"], b["rank"], int(b["isomorphism"])]
            for b in result["blocks"]
        ],
        f"isomorphism_n{args.n}": result["isomorphism"],
    }
    report = make_report(
        "conjecture",
        {"n": args.n},
        verdicts,
        tables,
        presentation_hashes={
            "ram": presentation("ram").hash,
            R_PRESENTATION.name: R_PRESENTATION.hash,
        },
        timings={"total": time.perf_counter() - started} if args.timings else None,
    )
    _emit(report, args)
    return 0 if all_pass(report) else 1


def cmd_cache(args) -> int:
    directory = resolve_cache_dir(args.dir, use_default=True)
    store = ComponentStore(directory)
    if args.action == "info":
        info = store.info()
        report = make_report("cache", {"action": "info", "dir": directory}, [], {"cache": info})
        _emit(report, args)
        return 0
    removed = store.clear()
    report = make_report(
        "cache", {"action": "clear", "dir": directory}, [], {"removed_files": removed}
    )
    _emit(report, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramops",
        description="Exact verification engine for the Ramanujan operad and its dual side.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--cache-dir", default=None, help="component cache directory")
        p.add_argument("--out", default=None, help="write the canonical report to this file")
        p.add_argument("--json", action="store_true", help="print the canonical report to stdout")
        p.add_argument(
            "--timings", action="store_true", help="include wall-clock timings in the report"
        )
        p.add_argument(
            "--max-arity",
            type=int,
            default=DEFAULT_MAX_ARITY,
            help="resource bound on the component arity",
        )

    p = sub.add_parser("dims", help="bigraded dimension table of an operad component")
    p.add_argument("--operad", choices=DIMS_OPERADS, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("ralg-dims", help="bigraded dimension table of a graph algebra")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ambient", choices=("forest", "full"), default="forest")
    p.add_argument("--fixture", choices=("two-color", "arnold"), default="two-color")
    p.add_argument(
        "--rank-report",
        action="store_true",
        help="also report ideal ranks with and without the 12-term families",
    )
    common(p)
    p.set_defaults(func=cmd_ralg_dims)

    p = sub.add_parser("ramanujan", help="print a Ramanujan polynomial and its table")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_ramanujan)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", help="isomorphism verdict at one arity")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_conjecture, max_arity=4)

    p = sub.add_parser("cache", help="inspect or clear the component cache")
    p.add_argument("action", choices=("info", "clear"))
    p.add_argument("--dir", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cache)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ResourceBoundError as exc:
        sys.stderr.write(f"resource bound exceeded: {exc}\n")
        if exc.partial:
            sys.stderr.write(f"partial progress: {exc.partial}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
