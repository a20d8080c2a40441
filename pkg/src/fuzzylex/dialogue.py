"""Query parsing and the disambiguation session state machine.

Queries follow the fixed template "How to <goal> [a|an|the] <object>?".
A session either resolves immediately (both terms known), decides from
previously learned functions, or asks the user to rate the applicable
candidates; submitted ratings are folded into the lexicon and the query is
rewritten with the winning system term.
"""
from __future__ import annotations

import enum
import re
import uuid
from dataclasses import dataclass, field

from .decision import DecisionResult
from .errors import DomainError, ParseError, StateError
from .lexicon import Lexicon, TermKind

QUERY_TEMPLATE = "How to <goal> [a|an|the] <object>?"

_QUERY_RE = re.compile(
    r"^\s*how\s+to\s+([^\s?]+)\s+(?:(?:a|an|the)\s+)?([^\s?]+)\s*\??\s*$",
    re.IGNORECASE,
)


@dataclass(frozen=True)
class Query:
    goal_surface: str
    object_surface: str
    raw: str


def parse_query(text: str) -> Query:
    """Extract the goal and object surfaces from a templated query."""
    match = _QUERY_RE.match(text or "")
    if match is None:
        raise ParseError(f"query does not match the template {QUERY_TEMPLATE!r}")
    return Query(goal_surface=match.group(1), object_surface=match.group(2), raw=text)


@dataclass(frozen=True)
class Policy:
    """Dialogue-level knobs the engine itself leaves open.

    ``always_elicit`` forces a rating round even for already-learned words;
    ``min_final_coefficient`` keeps a session in elicitation while the best
    candidate scores below the bar (``None`` accepts any maximum).
    """

    always_elicit: bool = False
    min_final_coefficient: float | None = None


class SessionStatus(enum.Enum):
    RESOLVED = "resolved"
    NEEDS_RATINGS = "needs_ratings"
    DECIDED = "decided"


@dataclass
class Session:
    """Dialogue state for one query.

    Only ``submit_ratings`` moves a session, and only from NEEDS_RATINGS
    forward to DECIDED (or back around the elicitation loop when a decision
    threshold is configured and unmet).
    """

    id: str
    query: Query
    policy: Policy
    status: SessionStatus
    resolved_goal: str | None = None
    resolved_object: str | None = None
    unknown_surface: str | None = None
    unknown_kind: TermKind | None = None
    candidates: list[str] = field(default_factory=list)
    decision: DecisionResult | None = None
    rewritten: str | None = None


def _canonical_text(goal: str, obj: str) -> str:
    return f"How to {goal} a {obj}?"


def _resolve(
    lex: Lexicon, surface: str, kind: TermKind, policy: Policy
) -> tuple[str | None, DecisionResult | None]:
    """Map a surface to a system term without dialogue, when possible.

    Returns (canonical term, decision) where the decision is present only
    when the term came from a learned entry rather than the vocabulary.
    """
    if lex.vocabulary.has_term(kind, surface):
        return lex.vocabulary.canonical(kind, surface), None
    if not policy.always_elicit and lex.has_entry(surface, kind):
        result = lex.interpret(surface, kind)
        threshold = policy.min_final_coefficient
        if threshold is None or result.final_coefficient >= threshold:
            return result.chosen, result
    return None, None


def start_session(
    lex: Lexicon, query: Query, policy: Policy | None = None, session_id: str | None = None
) -> Session:
    """Classify a parsed query and open the matching session state.

    Unknown goals are elicited against the goals applicable to the query's
    object; unknown objects against the objects the goal applies to. When
    both are unknown the object is elicited first, over the whole object
    vocabulary, and the goal round happens on the follow-up query.
    """
    policy = policy if policy is not None else Policy()
    session = Session(
        id=session_id if session_id is not None else uuid.uuid4().hex,
        query=query,
        policy=policy,
        status=SessionStatus.RESOLVED,
    )
    obj, obj_decision = _resolve(lex, query.object_surface, TermKind.OBJECT, policy)
    goal, goal_decision = _resolve(lex, query.goal_surface, TermKind.GOAL, policy)
    session.resolved_object = obj
    session.resolved_goal = goal

    if obj is None:
        session.status = SessionStatus.NEEDS_RATINGS
        session.unknown_surface = query.object_surface
        session.unknown_kind = TermKind.OBJECT
        if goal is not None:
            session.candidates = lex.candidates_for(goal, TermKind.GOAL)
        else:
            session.candidates = list(lex.vocabulary.objects)
        if not session.candidates:
            raise DomainError(
                f"no applicable candidates for object {query.object_surface!r}"
            )
        return session

    if goal is None:
        session.status = SessionStatus.NEEDS_RATINGS
        session.unknown_surface = query.goal_surface
        session.unknown_kind = TermKind.GOAL
        session.candidates = lex.candidates_for(obj, TermKind.OBJECT)
        if not session.candidates:
            raise DomainError(
                f"no applicable candidates for goal {query.goal_surface!r}"
            )
        return session

    session.rewritten = _canonical_text(goal, obj)
    decision = goal_decision if goal_decision is not None else obj_decision
    if decision is not None:
        session.status = SessionStatus.DECIDED
        session.decision = decision
    return session


def submit_ratings(lex: Lexicon, session: Session, ratings: dict[str, float]) -> Session:
    """Fold the user's possibility degrees and decide the unknown word.

    Ratings are applied in the session's candidate order, so replaying the
    same map always mutates the lexicon identically. Unrated candidates are
    simply skipped this round.
    """
    if session.status is not SessionStatus.NEEDS_RATINGS:
        raise StateError(f"session is {session.status.value}, not awaiting ratings")
    if not ratings:
        raise DomainError("at least one rating is required")

    by_key = {c.casefold(): c for c in session.candidates}
    ordered: dict[str, float] = {}
    for candidate, theta in ratings.items():
        stored = by_key.get(str(candidate).casefold())
        if stored is None:
            raise DomainError(
                f"{candidate!r} is not among this session's candidates"
            )
        theta = float(theta)
        if not 0.0 <= theta <= 1.0:
            raise DomainError(f"rating for {stored!r} must be in [0, 1], got {theta!r}")
        ordered[stored] = theta

    assert session.unknown_kind is not None and session.unknown_surface is not None
    for candidate in session.candidates:
        if candidate in ordered:
            lex.record_rating(
                session.unknown_surface, session.unknown_kind, candidate, ordered[candidate]
            )

    result = lex.interpret(session.unknown_surface, session.unknown_kind)
    session.decision = result
    threshold = session.policy.min_final_coefficient
    if threshold is not None and result.final_coefficient < threshold:
        return session  # stays in elicitation; the ratings are already folded

    if session.unknown_kind is TermKind.OBJECT:
        session.resolved_object = result.chosen
    else:
        session.resolved_goal = result.chosen
    goal = session.resolved_goal or session.query.goal_surface
    obj = session.resolved_object or session.query.object_surface
    session.rewritten = _canonical_text(goal, obj)
    session.status = SessionStatus.DECIDED
    return session


def rewrite(session: Session) -> str:
    """Canonical query text with system terms substituted."""
    if session.rewritten is None:
        raise StateError("session has no rewrite yet; ratings are still needed")
    return session.rewritten
