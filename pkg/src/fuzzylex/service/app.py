"""HTTP facade: dialogue sessions, lexicon inspection, curve export."""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ..errors import DomainError, FuzzyLexError, NotFoundError
from ..lexicon import TermKind, Vocabulary
from . import schemas
from .engine import Engine, ServiceConfig

_STATUS_BY_CODE = {
    "parse_error": 400,
    "not_found": 404,
    "conflict": 409,
    "domain_error": 422,
    "state_error": 409,
}


def _error_response(exc: FuzzyLexError, status: int | None = None) -> JSONResponse:
    body = schemas.ApiError(code=exc.code, message=str(exc))
    return JSONResponse(status_code=status or _STATUS_BY_CODE[exc.code], content=body.model_dump())


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config if config is not None else ServiceConfig()
    engine = Engine(config)
    app = FastAPI(title="fuzzylex", version="0.1.0")
    app.state.engine = engine

    @app.exception_handler(FuzzyLexError)
    async def handle_engine_error(request: Request, exc: FuzzyLexError) -> JSONResponse:
        return _error_response(exc)

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(request: Request, exc: RequestValidationError) -> JSONResponse:
        first = exc.errors()[0] if exc.errors() else {}
        where = ".".join(str(part) for part in first.get("loc", ()))
        message = f"{where}: {first.get('msg', 'invalid request body')}"
        return _error_response(DomainError(message))

    @app.post("/api/query", response_model=schemas.QueryResponse, response_model_exclude_none=True)
    def post_query(body: schemas.QueryRequest) -> schemas.QueryResponse:
        return engine.submit_query(body.text)

    @app.post(
        "/api/sessions/{session_id}/ratings",
        response_model=schemas.RatingsResponse,
        response_model_exclude_none=True,
    )
    def post_ratings(session_id: str, body: schemas.RatingsRequest) -> schemas.RatingsResponse:
        return engine.submit_ratings(session_id, body.ratings)

    @app.get("/api/lexicon", response_model=schemas.LexiconView)
    def get_lexicon() -> schemas.LexiconView:
        return engine.lexicon_view()

    @app.get("/api/lexicon/{kind}/{surface}", response_model=schemas.EntryView)
    def get_entry(kind: str, surface: str) -> schemas.EntryView:
        return engine.entry_view(_path_kind(kind), surface)

    @app.get("/api/lexicon/{kind}/{surface}/{candidate}/curve", response_model=schemas.CurveView)
    def get_curve(kind: str, surface: str, candidate: str, samples: int = 101):
        try:
            return engine.curve_view(_path_kind(kind), surface, candidate, samples)
        except DomainError as exc:  # bad sample count is a client syntax problem
            return _error_response(exc, status=400)

    @app.put("/api/vocabulary", response_model=schemas.VocabularyView)
    def put_vocabulary(body: schemas.VocabularyUpdate) -> schemas.VocabularyView:
        return engine.replace_vocabulary(_build_vocabulary(body))

    if config.ui_dir is not None:
        app.mount("/", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app


def _path_kind(kind: str) -> TermKind:
    try:
        return TermKind.parse(kind)
    except DomainError as exc:  # an unknown kind names a non-existent resource
        raise NotFoundError(str(exc)) from None


def _build_vocabulary(body: schemas.VocabularyUpdate) -> Vocabulary:
    """Validate a replacement vocabulary; any inconsistency is a bad body."""
    vocabulary = Vocabulary()
    try:
        for name in body.objects:
            vocabulary.add_term(TermKind.OBJECT, name)
        for name in body.goals:
            vocabulary.add_term(TermKind.GOAL, name)
        for goal, obj in body.applicability:
            vocabulary.set_applicable(goal, obj)
    except FuzzyLexError as exc:
        raise DomainError(str(exc)) from None
    return vocabulary
