"""Command line front end: map pipeline runs, self-play scoring, optimal
scores and the experiment server."""
from __future__ import annotations

import argparse
import csv
import random
import sys
from pathlib import Path

from . import fixtures, pipeline
from .world import load_map


def cmd_mapgen(args) -> int:
    criteria = pipeline.SelectionCriteria(
        pool_size=args.pool,
        runs_per_map=args.runs,
        select_count=args.select,
        max_std_dev=args.max_std_dev,
    )
    try:
        fixture_set = pipeline.build_fixture_set(args.seed, criteria)
    except pipeline.SelectionError as exc:
        print(f"selection failed on criterion '{exc.criterion}': {exc}", file=sys.stderr)
        print("try another --seed or a larger --pool", file=sys.stderr)
        return 1
    fixtures.write_fixture_dir(fixture_set, Path(args.out))
    ratios = [s.ratio for s in fixture_set.test_stats if s.ratio is not None]
    print(f"wrote {len(fixture_set.training)} training + {len(fixture_set.test)} test maps to {args.out}")
    print(f"mean score/optimal ratio over test maps: {sum(ratios) / len(ratios):.3f}")
    return 0


def cmd_selfplay(args) -> int:
    world = load_map(args.map)
    map_id = Path(args.map).stem
    rows = []
    for run in range(args.runs):
        seed = args.seed + run
        final = pipeline.self_play(world, random.Random(seed))
        rows.append(
            {
                "mapId": map_id,
                "run": run,
                "seed": seed,
                "score": final.score,
                "steps": len(final.steps),
                "outcome": final.status.value,
            }
        )
    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    writer = csv.DictWriter(out, fieldnames=["mapId", "run", "seed", "score", "steps", "outcome"])
    writer.writeheader()
    writer.writerows(rows)
    if args.csv:
        out.close()
        print(f"wrote {len(rows)} runs to {args.csv}")
    return 0


def cmd_optimal(args) -> int:
    world = load_map(args.map)
    print(pipeline.optimal_score(world))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    config = ServiceConfig(
        fixture_dir=Path(args.fixtures) if args.fixtures else None,
        master_seed=args.seed,
        idle_timeout=args.idle_timeout,
        log_dir=Path(args.logs) if args.logs else None,
        static_dir=Path(args.static) if args.static else None,
    )
    uvicorn.run(create_app(config), host=args.host, port=args.port)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="treasurehunt")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mapgen", help="generate, evaluate and select experiment maps")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pool", type=int, default=100)
    p.add_argument("--runs", type=int, default=20)
    p.add_argument("--select", type=int, default=10)
    p.add_argument("--max-std-dev", type=float, default=25.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_mapgen)

    p = sub.add_parser("selfplay", help="assistant-only runs of one map")
    p.add_argument("--map", required=True)
    p.add_argument("--runs", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_selfplay)

    p = sub.add_parser("optimal", help="omniscient best score of one map")
    p.add_argument("--map", required=True)
    p.set_defaults(func=cmd_optimal)

    p = sub.add_parser("serve", help="run the experiment HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--fixtures", help="fixture directory (defaults to the packaged set)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--idle-timeout", type=float, default=1800.0)
    p.add_argument("--logs", help="directory for session event logs")
    p.add_argument("--static", help="built browser client to serve at /app")
    p.set_defaults(func=cmd_serve)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
