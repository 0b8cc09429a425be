import logging
import sys

from supcomp.services.generator import SizeBounds, generate_model
from supcomp.services.model_loader import dump_model, save_model

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("generate", help="write a random model file")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--output", help="file to write; stdout when omitted")
    parser.add_argument("--max-atoms", type=int, default=SizeBounds.max_atoms)
    parser.add_argument("--max-chain", type=int, default=SizeBounds.max_chain)
    parser.add_argument("--max-prefix", type=int, default=SizeBounds.max_prefix)
    parser.add_argument("--max-period", type=int, default=SizeBounds.max_period)
    parser.set_defaults(handler=run)


def run(args) -> int:
    bounds = SizeBounds(args.max_atoms, args.max_chain, args.max_prefix, args.max_period)
    spec = generate_model(args.seed, bounds)
    if args.output:
        path = save_model(spec, args.output)
        logger.info("model with %d atoms written to %s", len(spec.atoms), path)
    else:
        sys.stdout.write(dump_model(spec))
    return 0
