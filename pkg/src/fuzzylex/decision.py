"""Ranking of candidate system terms by decision coefficient.

A candidate's coefficient is (alpha + 3*beta) / 4, weighting the superior
nucleus stone so functions with equal nucleus averages still separate. The
final decision keeps the maximum and every candidate attaining it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError
from .trapezoid import Trapezoid


@dataclass(frozen=True)
class CandidateScore:
    candidate: str
    coefficient: float


@dataclass(frozen=True)
class DecisionResult:
    """Outcome of ranking one user word against its candidates.

    ``winners`` lists every argmax candidate in input order; ``chosen`` is
    the first of them, so ties resolve deterministically without being
    hidden.
    """

    final_coefficient: float
    winners: tuple[str, ...]
    chosen: str
    scores: tuple[CandidateScore, ...]


def decision_coefficient(t: Trapezoid) -> float:
    """Score one candidate from the nucleus of its membership function."""
    return (t.alpha + 3.0 * t.beta) / 4.0


def final_decision(scores: Sequence[CandidateScore] | Iterable[CandidateScore]) -> DecisionResult:
    """Pick the candidate(s) with the maximal decision coefficient."""
    scores = tuple(scores)
    if not scores:
        raise DomainError("no candidates to decide between")
    best = max(s.coefficient for s in scores)
    winners = tuple(s.candidate for s in scores if s.coefficient == best)
    return DecisionResult(
        final_coefficient=best,
        winners=winners,
        chosen=winners[0],
        scores=scores,
    )
