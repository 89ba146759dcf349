"""
Command-line interface.
"""

from .commands import UsageError, build_parser, run
from .formatting import describe_ideal

__all__ = ["UsageError", "build_parser", "describe_ideal", "run"]
