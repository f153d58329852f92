"""Request/response models for the HTTP surface.

Handlers translate between these wire shapes and the core modules; they add
no behavior of their own.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str
    images: int
    dimension: int


class ResultItem(BaseModel):
    image_id: str
    score: float
    description: str
    source: str
    uri: str


class SearchResponse(BaseModel):
    session_id: str
    query_token: str
    offset: int
    exhausted: bool
    items: list[ResultItem]


class SuggestionItem(BaseModel):
    query: str
    explanation: str
    previews: list[ResultItem]


class SuggestResponse(BaseModel):
    session_id: str
    explanation: str
    non_conforming: bool
    suggestions: list[SuggestionItem]


class RleMask(BaseModel):
    size: list[int]  # [height, width]
    counts: list[int]


class SegmentItem(BaseModel):
    segment_id: str
    area: int
    rle: RleMask


class SegmentsResponse(BaseModel):
    image_id: str
    width: int
    height: int
    segments: list[SegmentItem]


class MaskRequest(BaseModel):
    image_id: str
    segment_ids: list[str]


class MaskResponse(BaseModel):
    mask_id: str
    image_id: str
    selected_segment_ids: list[str]
    area: int


class GenerateReferenceRequest(BaseModel):
    image_id: str
    mask_id: str
    reference_image_id: str


class GenerateKeywordsRequest(BaseModel):
    image_id: str
    mask_id: str
    keywords: list[str]


class GenerateResponse(BaseModel):
    session_id: str
    image_id: str  # id of the newly registered generated image
    parent_image_id: str
    mode: str
    backend_id: str
    elapsed: float
    uri: str
    width: int
    height: int
    description: str


class KeywordsResponse(BaseModel):
    session_id: str
    explanation: str
    aligned: list[str]
    diversified: list[str]
    short: bool


class SaveRequest(BaseModel):
    image_id: str


class SaveResponse(BaseModel):
    session_id: str
    saved: list[str]  # current saved set, oldest first


class EventRequest(BaseModel):
    """Client-logged gestures that have no server-side effect of their own."""

    kind: str
    data: dict = Field(default_factory=dict)


class EventAck(BaseModel):
    session_id: str
    seq: int


class SessionEventsResponse(BaseModel):
    session_id: str
    events: list[dict]


class ImageMeta(BaseModel):
    image_id: str
    description: str
    source: str
    uri: str
    width: int | None
    height: int | None
    provenance: dict | None


class ErrorBody(BaseModel):
    error: str
    detail: str
