"""Exception hierarchy shared by all diarscore modules."""

from __future__ import annotations


class DiarScoreError(Exception):
    """Base class for every error raised by diarscore."""


class DegenerateInterval(DiarScoreError, ValueError):
    """An interval with ``offset <= onset``."""


class NegativeGap(DiarScoreError, ValueError):
    """A negative ``max_gap`` passed to gap bridging."""


class FormatError(DiarScoreError):
    """A positioned problem in an RTTM, UEM, HTK label or manifest file.

    Attributes:
        line: 1-based line number, or ``None`` when the problem is file-level.
        field: name of the offending field, if any.
        message: human-readable description.
    """

    code = "FormatError"

    def __init__(self, line: int | None, message: str, field: str | None = None):
        self.line = line
        self.field = field
        self.message = message
        where = f"line {line}" if line is not None else "file"
        if field:
            where += f", field {field}"
        super().__init__(f"{self.code} ({where}): {message}")


class FieldCount(FormatError):
    code = "FieldCount"


class BadNumber(FormatError):
    code = "BadNumber"


class BadTag(FormatError):
    code = "BadTag"


class BadLabel(FormatError):
    code = "BadLabel"


class OverlapViolation(FormatError):
    code = "OverlapViolation"


class OverlappingRegions(FormatError):
    code = "OverlappingRegions"


class DuplicateFileId(FormatError):
    code = "DuplicateFileId"


class InvariantViolation(DiarScoreError, ValueError):
    """A value handed to a writer breaks its format's invariants."""


class ScoringError(DiarScoreError):
    """Scoring could not produce a number for some file."""


class EmptyReference(ScoringError):
    """DER or JER is undefined because there is no scored reference speech."""


class MissingFile(ScoringError):
    """A reference file has no system counterpart (or vice versa)."""

    def __init__(self, file_id: str, message: str | None = None):
        self.file_id = file_id
        super().__init__(message or f"MissingFile: no system output for {file_id!r}")


class MissingRegions(ScoringError):
    """A scored file has no entry in the UEM."""

    def __init__(self, file_id: str):
        self.file_id = file_id
        super().__init__(f"no UEM scoring regions for {file_id!r}")
