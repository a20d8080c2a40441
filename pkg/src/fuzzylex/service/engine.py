"""Serialized access to one lexicon plus the in-memory session table.

All lexicon access funnels through a single re-entrant lock: mutations are
linearized and persisted to the configured file before the caller sees a
response; readers always observe a consistent state. Sessions live only in
memory and expire after a TTL.
"""
from __future__ import annotations

import threading
import time
from dataclasses import dataclass
from pathlib import Path

from ..decision import DecisionResult, decision_coefficient
from ..dialogue import Policy, Session, parse_query, start_session, submit_ratings
from ..errors import NotFoundError
from ..lexicon import Lexicon, TermKind, Vocabulary, load, save
from . import schemas


@dataclass
class ServiceConfig:
    lexicon_path: Path | None = None
    ui_dir: Path | None = None
    host: str = "127.0.0.1"
    port: int = 8714
    always_elicit: bool = False
    min_final_coefficient: float | None = None
    session_ttl: float = 3600.0


class SessionStore:
    """TTL-bound in-memory session table; expired entries purge lazily."""

    def __init__(self, ttl: float) -> None:
        self._ttl = ttl
        self._items: dict[str, tuple[Session, float]] = {}
        self._lock = threading.Lock()

    def put(self, session: Session) -> None:
        with self._lock:
            self._purge()
            self._items[session.id] = (session, time.monotonic() + self._ttl)

    def get(self, session_id: str) -> Session:
        with self._lock:
            self._purge()
            found = self._items.get(session_id)
        if found is None:
            raise NotFoundError(f"no session {session_id!r}")
        return found[0]

    def _purge(self) -> None:
        now = time.monotonic()
        expired = [sid for sid, (_, deadline) in self._items.items() if deadline < now]
        for sid in expired:
            del self._items[sid]


class Engine:
    """The service's single writer around a lexicon and its session table."""

    def __init__(self, config: ServiceConfig) -> None:
        self.config = config
        self._lock = threading.RLock()
        self.sessions = SessionStore(config.session_ttl)
        path = config.lexicon_path
        if path is not None and Path(path).exists():
            self.lexicon = load(path)
        else:
            self.lexicon = Lexicon()

    def policy(self) -> Policy:
        return Policy(
            always_elicit=self.config.always_elicit,
            min_final_coefficient=self.config.min_final_coefficient,
        )

    def persist(self) -> None:
        if self.config.lexicon_path is not None:
            save(self.lexicon, self.config.lexicon_path)

    # -- dialogue ----------------------------------------------------------

    def submit_query(self, text: str) -> schemas.QueryResponse:
        with self._lock:
            query = parse_query(text)
            session = start_session(self.lexicon, query, self.policy())
            self.sessions.put(session)
            return schemas.QueryResponse(
                session_id=session.id,
                status=session.status.value,
                candidates=list(session.candidates) if session.candidates else None,
                unknown_surface=session.unknown_surface,
                unknown_kind=session.unknown_kind.value if session.unknown_kind else None,
                decision=_decision_payload(session.decision),
                rewritten=session.rewritten,
            )

    def submit_ratings(self, session_id: str, ratings: dict[str, float]) -> schemas.RatingsResponse:
        with self._lock:
            session = self.sessions.get(session_id)
            submit_ratings(self.lexicon, session, ratings)
            self.persist()  # durable before the response goes out
            assert session.decision is not None
            return schemas.RatingsResponse(
                status=session.status.value,
                decision=_decision_payload(session.decision),
                rewritten=session.rewritten,
            )

    # -- lexicon views -----------------------------------------------------

    def lexicon_view(self) -> schemas.LexiconView:
        with self._lock:
            return schemas.LexiconView(
                vocabulary=self._vocabulary_view(),
                entries=[
                    self._entry_view(entry.surface, entry.kind)
                    for entry in self.lexicon.entries()
                ],
            )

    def entry_view(self, kind: TermKind, surface: str) -> schemas.EntryView:
        with self._lock:
            return self._entry_view(surface, kind)

    def curve_view(self, kind: TermKind, surface: str, candidate: str, samples: int) -> schemas.CurveView:
        with self._lock:
            entry = self.lexicon.entry(surface, kind)
            trapezoid = entry.function_for(candidate)
            if trapezoid is None:
                raise NotFoundError(
                    f"no learned function for candidate {candidate!r} of {surface!r}"
                )
            return schemas.CurveView(
                surface=entry.surface,
                kind=kind.value,
                candidate=candidate,
                gamma=trapezoid.gamma,
                alpha=trapezoid.alpha,
                beta=trapezoid.beta,
                delta=trapezoid.delta,
                points=trapezoid.sample(samples),
            )

    def replace_vocabulary(self, vocabulary: Vocabulary) -> schemas.VocabularyView:
        with self._lock:
            self.lexicon.replace_vocabulary(vocabulary)
            self.persist()
            return self._vocabulary_view()

    def _vocabulary_view(self) -> schemas.VocabularyView:
        vocab = self.lexicon.vocabulary
        return schemas.VocabularyView(
            objects=vocab.objects,
            goals=vocab.goals,
            applicability=vocab.applicability,
        )

    def _entry_view(self, surface: str, kind: TermKind) -> schemas.EntryView:
        entry = self.lexicon.entry(surface, kind)
        result = self.lexicon.interpret(surface, kind)
        return schemas.EntryView(
            surface=entry.surface,
            kind=entry.kind.value,
            functions=[
                schemas.FunctionView(
                    candidate=candidate,
                    gamma=t.gamma,
                    alpha=t.alpha,
                    beta=t.beta,
                    delta=t.delta,
                    left_count=t.left_count,
                    right_count=t.right_count,
                    decision_coefficient=decision_coefficient(t),
                )
                for candidate, t in entry.functions.items()
            ],
            final_coefficient=result.final_coefficient,
            chosen=result.chosen,
        )


def _decision_payload(result: DecisionResult | None) -> schemas.DecisionPayload | None:
    if result is None:
        return None
    return schemas.DecisionPayload(
        final_coefficient=result.final_coefficient,
        chosen=result.chosen,
        winners=list(result.winners),
        scores=[
            schemas.ScoreItem(candidate=s.candidate, coefficient=s.coefficient)
            for s in result.scores
        ],
    )
