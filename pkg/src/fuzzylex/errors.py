"""Exception hierarchy shared by every layer of the engine.

Each class carries a stable ``code`` so the HTTP facade can map errors
to wire-level categories without inspecting messages.
"""


class FuzzyLexError(Exception):
    """Base class for all engine errors."""

    code = "domain_error"


class DomainError(FuzzyLexError):
    """A supplied value violates an operation's precondition."""

    code = "domain_error"


class NotFoundError(FuzzyLexError):
    """A referenced term, entry, or session does not exist."""

    code = "not_found"


class ConflictError(FuzzyLexError):
    """The operation would violate uniqueness or referential integrity."""

    code = "conflict"


class ParseError(FuzzyLexError):
    """Input text or a stored document does not match its grammar/schema."""

    code = "parse_error"


class UnsupportedVersionError(ParseError):
    """A lexicon document declares a schema version this build cannot read."""


class StateError(FuzzyLexError):
    """The operation is not legal in the session's current state."""

    code = "state_error"
