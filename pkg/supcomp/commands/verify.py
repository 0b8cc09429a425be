import logging
import sys

from supcomp.database import record_run
from supcomp.services.model_loader import load_model
from supcomp.services.reporting import FORMATS, render, write_report
from supcomp.services.runner import run_suite
from supcomp.services.suites import SUITES

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="run property suites and report counterexamples")
    parser.add_argument("--suite", required=True, help=f"one of {', '.join(SUITES + ('all',))}")
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--backend", choices=("rational", "float"), default="rational")
    parser.add_argument("--model", help="draw spaces and objects from this model file")
    parser.add_argument("--report", help="write the report to this file or directory instead of stdout")
    parser.add_argument("--mutate", metavar="ID", help="run against a deliberately corrupted identity")
    parser.add_argument("--format", choices=FORMATS, default="json")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--record", action="store_true", help="store a summary row in the run ledger")
    parser.set_defaults(handler=run)


def run(args) -> int:
    model = load_model(args.model) if args.model else None
    report = run_suite(
        args.suite,
        args.trials,
        args.seed,
        backend=args.backend,
        mutation=args.mutate,
        model=model,
        model_name=args.model,
        workers=args.workers,
    )
    path = None
    if args.report:
        path = write_report(report, args.report, args.format)
        logger.info("report written to %s", path)
    else:
        sys.stdout.write(render(report, args.format))
    if args.record:
        record_run(report, str(path) if path else None)
    return 0 if report.passed else 1
