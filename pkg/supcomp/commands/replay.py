"""``supcomp replay``: rerun a single trial from a counterexample."""
import json
import sys

from supcomp.services.model_loader import load_model
from supcomp.services.runner import replay
from supcomp.services.suites import encode


def register(subparsers) -> None:
    parser = subparsers.add_parser("replay", help="rerun one trial by property and trial seed")
    parser.add_argument("--property", required=True, help="suite/name as printed in a report")
    parser.add_argument("--trial-seed", type=int, required=True)
    parser.add_argument("--backend", choices=("rational", "float"), default="rational")
    parser.add_argument("--model")
    parser.add_argument("--mutate", metavar="ID")
    parser.set_defaults(handler=run)


def run(args) -> int:
    model = load_model(args.model) if args.model else None
    outcome, space = replay(args.property, args.trial_seed, args.backend, args.mutate, model)
    result = {
        "property": args.property,
        "trial_seed": args.trial_seed,
        "holds": outcome.holds,
        "vacuous": outcome.vacuous,
        "model": space,
        "inputs": encode(outcome.inputs),
        "left": encode(outcome.left),
        "right": encode(outcome.right),
        "detail": outcome.detail,
    }
    sys.stdout.write(json.dumps(result, sort_keys=True, indent=2) + "\n")
    return 0 if outcome.holds else 1
