"""Request and response models for the HTTP API."""
from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class QueryRequest(BaseModel):
    text: str = Field(min_length=1)


class ScoreItem(BaseModel):
    candidate: str
    coefficient: float


class DecisionPayload(BaseModel):
    final_coefficient: float
    chosen: str
    winners: list[str]
    scores: list[ScoreItem]


class QueryResponse(BaseModel):
    session_id: str
    status: Literal["resolved", "needs_ratings", "decided"]
    candidates: list[str] | None = None
    unknown_surface: str | None = None
    unknown_kind: Literal["object", "goal"] | None = None
    decision: DecisionPayload | None = None
    rewritten: str | None = None


class RatingsRequest(BaseModel):
    ratings: dict[str, float]


class RatingsResponse(BaseModel):
    status: Literal["needs_ratings", "decided"]
    decision: DecisionPayload
    rewritten: str | None = None


class FunctionView(BaseModel):
    candidate: str
    gamma: float
    alpha: float
    beta: float
    delta: float
    left_count: int
    right_count: int
    decision_coefficient: float


class EntryView(BaseModel):
    surface: str
    kind: Literal["object", "goal"]
    functions: list[FunctionView]
    final_coefficient: float
    chosen: str


class VocabularyView(BaseModel):
    objects: list[str]
    goals: list[str]
    applicability: list[tuple[str, str]]


class LexiconView(BaseModel):
    vocabulary: VocabularyView
    entries: list[EntryView]


class CurveView(BaseModel):
    surface: str
    kind: Literal["object", "goal"]
    candidate: str
    gamma: float
    alpha: float
    beta: float
    delta: float
    points: list[tuple[float, float]]


class VocabularyUpdate(BaseModel):
    objects: list[str]
    goals: list[str]
    applicability: list[tuple[str, str]] = Field(default_factory=list)


class ApiError(BaseModel):
    code: Literal["parse_error", "not_found", "conflict", "domain_error", "state_error"]
    message: str
