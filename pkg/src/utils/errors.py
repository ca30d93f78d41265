"""
Error Hierarchy
Every failure category maps to a distinct CLI exit status
"""
from typing import Optional


class TwmdgError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1
    category = "general"


class ConfigError(TwmdgError):
    """Invalid or infeasible configuration."""

    exit_code = 1
    category = "config"


class UsageError(TwmdgError):
    """Unknown subcommand or flag, or a required flag missing."""

    exit_code = 1
    category = "usage"


class ParseError(TwmdgError):
    """Malformed input record or file."""

    exit_code = 2
    category = "parse"

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class RejectedRecordError(ParseError):
    """A record handed to build_graph violates the four-tuple invariants."""

    def __init__(self, record_index: int, reason: str):
        super().__init__(f"record {record_index} rejected: {reason}")
        self.record_index = record_index
        self.reason = reason


class ArtifactIOError(TwmdgError):
    """Artifact could not be read or written."""

    exit_code = 3
    category = "io"


class ApiError(TwmdgError):
    """Remote transaction API failure."""

    exit_code = 4
    category = "api"


class MathError(TwmdgError):
    """Numerical precondition violated."""

    exit_code = 5
    category = "math"


class NoCandidatesError(MathError):
    pass


class DimensionError(MathError):
    pass


class EmptyVocabError(MathError):
    pass


class UndefinedMetricError(MathError):
    pass


class SingleClassError(MathError):
    pass


class InsufficientPairsError(MathError):
    pass


class SplitError(MathError):
    pass
