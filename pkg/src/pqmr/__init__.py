"""Finite multirings, pq-multirings, pq-pairs and their quadratic forms."""

from .core import (
    FiniteMultiring, FormatError, UsageError, builtin, check_multigroup, check_multiring,
    from_json, q2, to_json,
)
from .report import Law, Report, Verdict

__version__ = "0.1.0"

__all__ = [
    "FiniteMultiring", "FormatError", "Law", "Report", "UsageError", "Verdict", "builtin",
    "check_multigroup", "check_multiring", "from_json", "q2", "to_json",
]
