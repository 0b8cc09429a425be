"""``supcomp eval``: ad-hoc computation over the vectors of a model."""
import json
import sys

from supcomp.kernel.scalars import format_scalar
from supcomp.kernel.vectors import ExtVec
from supcomp.services.expressions import evaluate
from supcomp.services.model_loader import load_model, materialize
from supcomp.services.runner import parse_backend


def register(subparsers) -> None:
    parser = subparsers.add_parser("eval", help="evaluate an expression over named vectors")
    parser.add_argument("--model", required=True)
    parser.add_argument("--expr", required=True)
    parser.add_argument("--backend", choices=("rational", "float"), default="rational")
    parser.set_defaults(handler=run)


def run(args) -> int:
    model = materialize(load_model(args.model), parse_backend(args.backend))
    value = evaluate(model, args.expr)
    encoded = value.to_strings() if isinstance(value, ExtVec) else format_scalar(value)
    sys.stdout.write(json.dumps({"expression": args.expr, "value": encoded}, indent=2) + "\n")
    return 0
