"""HTTP surface over the core modules.

Handlers are thin: translate the request, call one core operation, log the
matching session event, and shape the response. Session identity rides the
X-Session-Id header; the server mints one on first contact and echoes it so
clients can keep it.

Gesture-to-event mapping (exactly one event per gesture):
  /search -> text_search, /similar -> image_search, /more -> show_more,
  /suggest -> concretize_shown, /generate/* -> modify,
  /save -> save, DELETE /save -> unsave, /event -> concretize_accepted.
Sub-steps of a gesture (/segments, /mask) and pure reads log nothing.
"""

from __future__ import annotations

import uuid

from fastapi import Body, Depends, FastAPI, Query, Request, Response
from fastapi.responses import JSONResponse

from gensearch.corpus.pixels import encode_png
from gensearch.errors import (
    BackendUnavailable,
    DeadlineExceeded,
    DimensionMismatch,
    DuplicateId,
    EmptyIndex,
    EmptyKeywords,
    EmptyQuery,
    EmptySelection,
    GensearchError,
    MalformedLog,
    MaskMismatch,
    NoJsonFound,
    NotFound,
    ProviderUnavailable,
    SchemaViolation,
    StorageFailure,
    UnknownImage,
    UnknownParent,
    UnknownSegment,
    UnknownSession,
    UnreadablePixels,
)
from gensearch.keywords import build_context
from gensearch.retrieval.search import ResultPage
from gensearch.service.runtime import Runtime
from gensearch.service.schemas import (
    EventAck,
    EventRequest,
    GenerateKeywordsRequest,
    GenerateReferenceRequest,
    GenerateResponse,
    HealthResponse,
    ImageMeta,
    KeywordsResponse,
    MaskRequest,
    MaskResponse,
    ResultItem,
    SaveRequest,
    SaveResponse,
    SearchResponse,
    SegmentItem,
    SegmentsResponse,
    SessionEventsResponse,
    SuggestionItem,
    SuggestResponse,
)
from gensearch.session.patterns import report_for_session

SESSION_HEADER = "X-Session-Id"

_STATUS_BY_ERROR: list[tuple[type, int]] = [
    (NotFound, 404),
    (UnknownImage, 404),
    (UnknownSession, 404),
    (UnknownParent, 404),
    (UnknownSegment, 404),
    (UnreadablePixels, 404),
    (EmptyQuery, 400),
    (EmptySelection, 400),
    (EmptyKeywords, 400),
    (MaskMismatch, 400),
    (MalformedLog, 400),
    (DimensionMismatch, 400),
    (DuplicateId, 409),
    (EmptyIndex, 409),
    (ProviderUnavailable, 503),
    (BackendUnavailable, 503),
    (DeadlineExceeded, 504),
    (SchemaViolation, 502),
    (NoJsonFound, 502),
    (StorageFailure, 500),
]

# Gestures the browser may log directly because no server call carries them.
_CLIENT_LOGGABLE_KINDS = {"concretize_accepted"}


def _status_for(exc: GensearchError) -> int:
    for err_type, status in _STATUS_BY_ERROR:
        if isinstance(exc, err_type):
            return status
    return 500


def create_app(runtime: Runtime) -> FastAPI:
    app = FastAPI(title="gensearch", version="0.1.0")
    app.state.runtime = runtime

    def session_id(request: Request, response: Response) -> str:
        sid = request.headers.get(SESSION_HEADER) or uuid.uuid4().hex
        runtime.sessions.ensure(sid)
        response.headers[SESSION_HEADER] = sid
        return sid

    @app.exception_handler(GensearchError)
    async def gensearch_error(_request: Request, exc: GensearchError) -> JSONResponse:
        return JSONResponse(
            status_code=_status_for(exc),
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    def result_items(page: ResultPage) -> list[ResultItem]:
        items = []
        for image_id, score in page.items:
            record = runtime.corpus.get_image(image_id)
            items.append(
                ResultItem(
                    image_id=image_id,
                    score=score,
                    description=record.description,
                    source=record.source,
                    uri=f"/images/{image_id}",
                )
            )
        return items

    def page_response(sid: str, page: ResultPage) -> SearchResponse:
        return SearchResponse(
            session_id=sid,
            query_token=page.query_token,
            offset=page.offset,
            exhausted=page.exhausted,
            items=result_items(page),
        )

    # -- health ---------------------------------------------------------------

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(
            status="ok", images=len(runtime.corpus), dimension=runtime.index.dimension
        )

    # -- search ---------------------------------------------------------------

    @app.get("/search", response_model=SearchResponse)
    def search(
        q: str = Query(...),
        offset: int = Query(0, ge=0),
        sid: str = Depends(session_id),
    ) -> SearchResponse:
        page = runtime.search.search_text(q, offset=offset)
        runtime.sessions.record_event(
            sid,
            "text_search",
            {
                "query": q,
                "query_token": page.query_token,
                "result_ids": [image_id for image_id, _ in page.items],
            },
        )
        return page_response(sid, page)

    @app.get("/similar", response_model=SearchResponse)
    def similar(
        image_id: str = Query(...),
        offset: int = Query(0, ge=0),
        sid: str = Depends(session_id),
    ) -> SearchResponse:
        source = runtime.corpus.get_image(image_id).source
        page = runtime.search.search_image(image_id, offset=offset, image_source=source)
        runtime.sessions.record_event(
            sid,
            "image_search",
            {
                "image_id": image_id,
                "image_source": source,
                "query_token": page.query_token,
                "result_ids": [item_id for item_id, _ in page.items],
            },
        )
        return page_response(sid, page)

    @app.get("/more", response_model=SearchResponse)
    def more(token: str = Query(...), sid: str = Depends(session_id)) -> SearchResponse:
        page = runtime.search.more(token)
        runtime.sessions.record_event(
            sid,
            "show_more",
            {
                "query_token": token,
                "result_ids": [image_id for image_id, _ in page.items],
            },
        )
        return page_response(sid, page)

    # -- query concretization ----------------------------------------------------

    @app.get("/suggest", response_model=SuggestResponse)
    def suggest(q: str = Query(...), sid: str = Depends(session_id)) -> SuggestResponse:
        batch = runtime.concretize.suggest(q, k=runtime.config.preview_k)
        runtime.sessions.record_event(sid, "concretize_shown", {"query": q})
        return SuggestResponse(
            session_id=sid,
            explanation=batch.explanation,
            non_conforming=batch.non_conforming,
            suggestions=[
                SuggestionItem(
                    query=s.query,
                    explanation=s.explanation,
                    previews=result_items(
                        ResultPage(query_token="", items=s.previews, offset=0, exhausted=False)
                    ),
                )
                for s in batch.suggestions
            ],
        )

    # -- modification ------------------------------------------------------------

    @app.get("/segments", response_model=SegmentsResponse)
    def segments(image_id: str = Query(...)) -> SegmentsResponse:
        segment_map = runtime.modify.segment_map_for(image_id)
        height, width = segment_map.segments[0].bitmap.shape
        return SegmentsResponse(
            image_id=image_id,
            width=int(width),
            height=int(height),
            segments=[SegmentItem(**s.to_dict()) for s in segment_map.segments],
        )

    @app.post("/mask", response_model=MaskResponse)
    def make_mask(body: MaskRequest) -> MaskResponse:
        mask = runtime.modify.assemble_mask(body.image_id, body.segment_ids)
        return MaskResponse(
            mask_id=mask.mask_id,
            image_id=mask.image_id,
            selected_segment_ids=sorted(mask.selected_segment_ids),
            area=int(mask.bitmap.sum()),
        )

    def generate_response(sid: str, result) -> GenerateResponse:
        record = result.record
        return GenerateResponse(
            session_id=sid,
            image_id=record.id,
            parent_image_id=result.provenance.parent_image_id,
            mode=result.provenance.mode,
            backend_id=result.provenance.backend_id,
            elapsed=result.elapsed,
            uri=f"/images/{record.id}",
            width=record.width or 0,
            height=record.height or 0,
            description=record.description,
        )

    @app.post("/generate/reference", response_model=GenerateResponse)
    def generate_reference(
        body: GenerateReferenceRequest, sid: str = Depends(session_id)
    ) -> GenerateResponse:
        result = runtime.modify.generate_by_reference(
            body.image_id, body.mask_id, body.reference_image_id
        )
        runtime.sessions.record_event(
            sid,
            "modify",
            {"mode": "reference", "image_id": body.image_id, "result_id": result.record.id},
        )
        return generate_response(sid, result)

    @app.post("/generate/keywords", response_model=GenerateResponse)
    def generate_keywords(
        body: GenerateKeywordsRequest, sid: str = Depends(session_id)
    ) -> GenerateResponse:
        result = runtime.modify.generate_by_keywords(body.image_id, body.mask_id, body.keywords)
        runtime.sessions.record_event(
            sid,
            "modify",
            {"mode": "keywords", "image_id": body.image_id, "result_id": result.record.id},
        )
        return generate_response(sid, result)

    # -- keyword suggestions -------------------------------------------------------

    @app.get("/keywords", response_model=KeywordsResponse)
    def keywords(image_id: str = Query(...), sid: str = Depends(session_id)) -> KeywordsResponse:
        context = build_context(runtime.sessions, runtime.corpus, sid, image_id)
        suggestion = runtime.keywords.suggest_keywords(context)
        return KeywordsResponse(
            session_id=sid,
            explanation=suggestion.explanation,
            aligned=suggestion.aligned,
            diversified=suggestion.diversified,
            short=suggestion.short,
        )

    # -- saving ----------------------------------------------------------------

    @app.post("/save", response_model=SaveResponse)
    def save(body: SaveRequest, sid: str = Depends(session_id)) -> SaveResponse:
        runtime.corpus.get_image(body.image_id)  # 404 before logging
        runtime.sessions.record_event(sid, "save", {"image_id": body.image_id})
        return SaveResponse(session_id=sid, saved=runtime.sessions.saved_image_ids(sid))

    @app.delete("/save", response_model=SaveResponse)
    def unsave(image_id: str = Query(...), sid: str = Depends(session_id)) -> SaveResponse:
        runtime.corpus.get_image(image_id)
        runtime.sessions.record_event(sid, "unsave", {"image_id": image_id})
        return SaveResponse(session_id=sid, saved=runtime.sessions.saved_image_ids(sid))

    # -- session ------------------------------------------------------------------

    @app.get("/session/report")
    def session_report(sid: str = Depends(session_id)) -> dict:
        return report_for_session(runtime.sessions, sid).to_dict()

    @app.get("/session/events", response_model=SessionEventsResponse)
    def session_events(sid: str = Depends(session_id)) -> SessionEventsResponse:
        events = [e.to_dict() for e in runtime.sessions.events(sid)]
        return SessionEventsResponse(session_id=sid, events=events)

    @app.post("/event", response_model=EventAck)
    def log_event(body: EventRequest, sid: str = Depends(session_id)) -> EventAck:
        if body.kind not in _CLIENT_LOGGABLE_KINDS:
            return JSONResponse(
                status_code=400,
                content={
                    "error": "ValueError",
                    "detail": f"kind {body.kind!r} is logged server-side, not via /event",
                },
            )
        seq = runtime.sessions.record_event(sid, body.kind, body.data)
        return EventAck(session_id=sid, seq=seq)

    # -- images --------------------------------------------------------------------

    @app.get("/images/{image_id}/meta", response_model=ImageMeta)
    def image_meta(image_id: str) -> ImageMeta:
        record = runtime.corpus.get_image(image_id)
        return ImageMeta(
            image_id=record.id,
            description=record.description,
            source=record.source,
            uri=f"/images/{record.id}",
            width=record.width,
            height=record.height,
            provenance=record.provenance.to_dict() if record.provenance else None,
        )

    @app.get("/images/{image_id}")
    def image_bytes(image_id: str) -> Response:
        pixels = runtime.corpus.get_pixels(image_id)
        return Response(content=encode_png(pixels), media_type="image/png")

    return app
