"""Command line entry point: ``cannonball {gen,solve,verify,oracle,bench,render}``.

Exit codes: 0 success, 1 verification failed, 2 input error, 3 internal
assertion (a structural claim failed at runtime), 4 oracle limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import run_bench, write_report
from .errors import ContractViolation, InputError, LemmaViolation
from .formats import (
    dumps_coloring,
    dumps_instance,
    read_coloring,
    read_instance,
    write_instance,
)
from .generate import GenParams, generate
from .multicolor import naive_solve, solve
from .render import render_svg
from .verify import EXCEEDS_LIMIT, exact_multichromatic, verify

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3
EXIT_LIMIT = 4


def _write(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_gen(args):
    if args.out_dir:
        Path(args.out_dir).mkdir(parents=True, exist_ok=True)
        for k in range(args.count):
            p = _params(args, args.seed + k)
            write_instance(Path(args.out_dir) / f"inst-{args.seed + k:06d}.jsonl", generate(p))
    else:
        _write(dumps_instance(generate(_params(args, args.seed))), args.out)
    return EXIT_OK


def _params(args, seed):
    stacking = args.stacking
    layers = args.layers
    if layers is None:
        named = stacking.lower() in ("fcc", "hcp", "random")
        layers = 3 if named else len(stacking)
    return GenParams(
        layers=layers,
        width=args.width,
        height=args.height,
        stacking=stacking,
        max_demand=args.max_demand,
        density=args.density,
        seed=seed,
    )


def cmd_solve(args):
    g = read_instance(args.instance)
    f, stats = (naive_solve if args.naive else solve)(g)
    summary = stats.summary()
    summary["algorithm"] = "naive" if args.naive else "cannonball-11/6"
    _write(dumps_coloring(f, summary), args.out)
    if args.stats:
        print(
            f"colors_used={stats.colors_used} omega={list(stats.omega)} "
            f"bound_value={stats.bound_value} bound_ok={stats.bound_ok} "
            f"bound_risk_events={len(stats.bound_risk_events)} "
            f"step_grants={summary['step_grants']}",
            file=sys.stderr if args.out in (None, "-") else sys.stdout,
        )
    return EXIT_OK


def cmd_verify(args):
    g = read_instance(args.instance)
    f, _ = read_coloring(args.coloring)
    report = verify(g, f)
    for viol in report.violations:
        print(f"{viol.kind}: {' '.join(map(str, viol.vertices))} {viol.color or ''}".rstrip())
    print("ok" if report.ok else f"{len(report.violations)} violation(s)")
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_oracle(args):
    g = read_instance(args.instance)
    chi = exact_multichromatic(g, args.limit, max_states=args.max_states)
    print(chi)
    return EXIT_LIMIT if chi == EXCEEDS_LIMIT else EXIT_OK


def cmd_bench(args):
    rows = run_bench(args.corpus, jobs=args.jobs)
    write_report(rows, args.out)
    failed = sum(1 for r in rows if r["error"])
    print(f"{len(rows)} instance(s), {failed} error(s) -> {args.out}")
    return EXIT_OK


def cmd_render(args):
    g = read_instance(args.instance)
    f = read_coloring(args.coloring)[0] if args.coloring else None
    _write(render_svg(g, f), args.out)
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="cannonball", description="Multicolour weighted cannonball graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate random instances")
    p.add_argument("--layers", type=int)
    p.add_argument("--width", type=int, default=6)
    p.add_argument("--height", type=int, default=6)
    p.add_argument("--stacking", default="fcc", help="fcc, hcp, random or letters such as ABCB")
    p.add_argument("--max-demand", type=int, default=20)
    p.add_argument("--density", type=float, default=0.7)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out")
    p.add_argument("--out-dir", help="write --count instances with consecutive seeds")
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="multicolour an instance")
    p.add_argument("instance")
    p.add_argument("-o", "--out")
    p.add_argument("--naive", action="store_true", help="run the base-palette baseline")
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a colouring against an instance")
    p.add_argument("instance")
    p.add_argument("coloring")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact multichromatic number of a tiny instance")
    p.add_argument("instance")
    p.add_argument("--limit", type=int, default=60)
    p.add_argument("--max-states", type=int, default=200_000)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="CSV report over a directory of instances")
    p.add_argument("corpus")
    p.add_argument("-o", "--out", default="bench.csv")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("render", help="SVG drawing of an instance")
    p.add_argument("instance")
    p.add_argument("--coloring")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LemmaViolation as e:
        print(f"internal assertion: {e}", file=sys.stderr)
        if e.counterexample is not None:
            print(json.dumps(e.counterexample, indent=2), file=sys.stderr)
        return EXIT_INTERNAL
    except ContractViolation as e:
        print(f"internal assertion: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, OSError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
