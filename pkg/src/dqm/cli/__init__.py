"""The ``dqm`` command line."""

from dqm.cli.commands import cli, main
from dqm.cli.config import JobConfig

__all__ = ["cli", "main", "JobConfig"]
