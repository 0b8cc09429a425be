from supcomp.database import list_runs


def register(subparsers) -> None:
    parser = subparsers.add_parser("history", help="list recorded runs, newest first")
    parser.add_argument("--limit", type=int, default=20)
    parser.add_argument("--suite")
    parser.set_defaults(handler=run)


def run(args) -> int:
    runs = list_runs(limit=args.limit, suite=args.suite)
    if not runs:
        print("no recorded runs")
        return 0
    for r in runs:
        status = "pass" if r.passed else f"FAIL ({r.failures})"
        mutation = f" mutate={r.mutation}" if r.mutation else ""
        print(f"#{r.id} {r.created_at:%Y-%m-%d %H:%M} {r.suite} {r.backend} "
              f"seed={r.seed} trials={r.trials}{mutation} {status}")
    return 0
