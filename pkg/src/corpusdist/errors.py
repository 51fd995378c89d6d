"""Exception and warning types shared across the package."""


class CorpusDistError(Exception):
    """Base class for every error this package raises deliberately."""


class TmxParseError(CorpusDistError):
    """Malformed XML in a TMX input; carries the failing byte offset."""

    def __init__(self, message: str, byte_offset: int | None = None):
        super().__init__(message)
        self.byte_offset = byte_offset


class TmxContentError(CorpusDistError):
    """Well-formed XML that falls outside the supported TMX subset."""


class EncodingError(CorpusDistError):
    """Undecodable plain-text input; carries the failing byte offset."""

    def __init__(self, message: str, byte_offset: int | None = None):
        super().__init__(message)
        self.byte_offset = byte_offset


class LanguageNotFoundError(CorpusDistError):
    """The requested language has no variant in the document."""


class EmptyCorpusError(CorpusDistError):
    """An operation that needs tokens was handed an empty corpus."""


class ConfigError(CorpusDistError):
    """Invalid metric or generator configuration."""


class DataError(CorpusDistError):
    """The input collection cannot support the requested computation."""


class UndefinedCorrelationError(CorpusDistError):
    """Pearson's r is undefined because an input vector is constant."""


class ComparabilityWarning(UserWarning):
    """Degenerate but recoverable situation, e.g. disjoint vocabularies."""
