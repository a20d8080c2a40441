"""fuzzylex: learns what unknown query words mean, one rating at a time.

Each (user word, system term) pair carries a trapezoidal membership
function built from the first possibility degree a user supplies and
adjusted by every later one; queries are disambiguated by ranking the
candidates' decision coefficients.
"""
from .decision import CandidateScore, DecisionResult, decision_coefficient, final_decision
from .dialogue import (
    Policy,
    Query,
    Session,
    SessionStatus,
    parse_query,
    rewrite,
    start_session,
    submit_ratings,
)
from .errors import (
    ConflictError,
    DomainError,
    FuzzyLexError,
    NotFoundError,
    ParseError,
    StateError,
    UnsupportedVersionError,
)
from .lexicon import Lexicon, TermKind, UserWordEntry, Vocabulary, dumps, load, loads, save
from .trapezoid import Trapezoid, construct

__version__ = "0.1.0"

__all__ = [
    "CandidateScore",
    "ConflictError",
    "DecisionResult",
    "DomainError",
    "FuzzyLexError",
    "Lexicon",
    "NotFoundError",
    "ParseError",
    "Policy",
    "Query",
    "Session",
    "SessionStatus",
    "StateError",
    "TermKind",
    "Trapezoid",
    "UnsupportedVersionError",
    "UserWordEntry",
    "Vocabulary",
    "construct",
    "decision_coefficient",
    "dumps",
    "final_decision",
    "load",
    "loads",
    "parse_query",
    "rewrite",
    "save",
    "start_session",
    "submit_ratings",
]
