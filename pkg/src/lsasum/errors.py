"""Exception types shared across the package."""

from __future__ import annotations


class SummarizerError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(SummarizerError):
    """Invalid configuration value or flag combination."""


class IoError(SummarizerError):
    """A required file could not be read; the message names the path."""


class FormatError(SummarizerError):
    """A file does not have the structure its format promises."""


class TruncationError(FormatError):
    """A binary file ended in the middle of a record."""

    def __init__(self, message: str, byte_offset: int):
        super().__init__(f"{message} (byte offset {byte_offset})")
        self.byte_offset = byte_offset


class RecordError(FormatError):
    """A single record in a text file is malformed."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class DataError(SummarizerError):
    """Parsed values are unusable (non-finite floats, bad shapes)."""


class DegenerateVectorError(DataError):
    """A vector with zero norm was used where a direction is required."""


class EmptyVocabularyError(SummarizerError):
    """No usable terms remain after preprocessing and vocabulary drops."""


class SingleSentenceError(SummarizerError):
    """Entropy weights need at least two sentences."""
