"""
Logging configuration for the command-line entry point.

Library modules only call ``logging.getLogger(__name__)``; handlers are
installed here, once, by the CLI.
"""

import logging
import sys

# logger name component -> bracketed tag
TAG_OVERRIDES = {
    "cli": "CLI",
    "core": "EigenLadder",
    "fdlie": "FDLie",
    "operator_poly": "Algebra",
    "eigenoperator": "Algebra",
    "closed_form": "Quartic",
    "perturbative": "Quartic",
    "wkb": "Quartic",
    "elliptic": "Quartic",
    "engine": "Semiclassical",
    "surfaces": "Semiclassical",
}


class TagFilter(logging.Filter):
    """Adds a ``tag`` attribute derived from the logger name."""

    def filter(self, record: logging.LogRecord) -> bool:
        leaf = record.name.rsplit(".", 1)[-1]
        record.tag = TAG_OVERRIDES.get(leaf, leaf.replace("_", " ").title().replace(" ", ""))
        return True


def configure_logging(verbosity: int = 0, stream=None) -> logging.Logger:
    """
    Install a single stderr handler on the ``eigenladder`` logger.

    Args:
        verbosity: -1 quiet (WARNING), 0 normal (INFO), 1 verbose (DEBUG)
        stream: Target stream, stderr by default

    Returns:
        The package root logger
    """
    level = {-1: logging.WARNING, 0: logging.INFO}.get(verbosity, logging.DEBUG)
    root = logging.getLogger("eigenladder")
    for handler in list(root.handlers):
        root.removeHandler(handler)

    handler = logging.StreamHandler(stream or sys.stderr)
    handler.addFilter(TagFilter())
    handler.setFormatter(logging.Formatter("[%(tag)s] %(message)s"))
    root.addHandler(handler)
    root.setLevel(level)
    root.propagate = False
    return root
