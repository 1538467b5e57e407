"""Command-line front door: validate, tradeoff, scan, divergence, randsuite."""

from .commands import COMMANDS, CommandResult, JobContext
from .main import build_parser, run, main

__all__ = [
    "COMMANDS",
    "CommandResult",
    "JobContext",
    "build_parser",
    "run",
    "main",
]
