"""CLI subcommands; each module registers its parser and handler."""
from supcomp.commands import evaluate, generate, history, replay, verify

COMMANDS = (verify, evaluate, generate, history, replay)
