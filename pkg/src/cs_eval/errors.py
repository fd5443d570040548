"""Exception types shared across the toolkit.

Every error raised on purpose derives from ToolkitError so callers (and
the command line front end) can catch one base class.
"""

from __future__ import annotations


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class ParseError(ToolkitError):
    """A data file could not be parsed; the message carries line numbers."""


class DuplicateKeyError(ToolkitError):
    """A mapping file defines the same key twice."""


class DuplicateIdError(ToolkitError):
    """A corpus file contains the same utterance id twice."""


class InvalidSchemeError(ToolkitError):
    """A transliteration scheme violates its declared properties."""


class EmptyReferenceError(ToolkitError):
    """The reference side of a comparison is empty while the other is not."""


class UnknownGraphemeError(ToolkitError):
    """No grapheme-to-phoneme rule applies at the current position."""


class UnknownPhoneError(ToolkitError):
    """A phone is missing from the articulatory feature table."""


class DimensionMismatchError(ToolkitError):
    """Two vectors (or a vector and its store) disagree on dimensionality."""


class ZeroVectorError(ToolkitError):
    """Cosine similarity is undefined for an all-zero vector."""


class MissingEmbeddingError(ToolkitError):
    """An embedding store has no entry for the requested (id, side, channel)."""


class NoLanguageTokensError(ToolkitError):
    """An utterance contains no tokens tagged with a language."""


class InsufficientAnnotatorsError(ToolkitError):
    """Agreement statistics need at least two annotators."""


class DegenerateVarianceError(ToolkitError):
    """A correlation is undefined because one series is constant."""
