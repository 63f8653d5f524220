"""Ordered trees, rigid surjections and their Ramsey witnesses.

Thin wrappers over the C++ core. Every command of the ``ramsey`` tool is
available through :func:`run` (parameters as keyword arguments, report as a
dict) or :func:`cli` (the exact command line).
"""

import json

from . import _ramsey
from ._ramsey import (
    RamseyError,
    catalan,
    count_embeddings,
    count_rigid_surjections,
    enum_trees,
    stirling2,
)

__version__ = _ramsey.__version__

__all__ = [
    "RamseyError",
    "catalan",
    "cli",
    "commands",
    "count_embeddings",
    "count_rigid_surjections",
    "enum_trees",
    "run",
    "schema_versions",
    "stirling2",
]


def commands():
    return list(_ramsey.command_names())


def schema_versions():
    return json.loads(_ramsey.schema_versions())


def run(command, max_nodes=None, jobs=1, normalize=False, **params):
    """Run a command such as ``"witness check"``; returns (exit_code, report)."""
    code, text = _ramsey.run_command(command, json.dumps(params), max_nodes, jobs, normalize)
    return code, json.loads(text)


def cli(*args):
    """Same as the ``ramsey`` executable; returns (exit_code, stdout, stderr)."""
    return _ramsey.run_cli([str(a) for a in args])
