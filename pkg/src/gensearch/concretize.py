"""Query concretization pipeline.

Turns a vague text query into exactly five more specific queries, each asked
to extend the original by at least three added words, then attaches a top-8
preview search to each suggestion. Preview searches are system-initiated and
are not logged as user search actions.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from gensearch.errors import EmptyQuery, NoJsonFound, SchemaViolation
from gensearch.llm import (
    CONCRETIZE_SCHEMA,
    ChatProvider,
    DecodingParams,
    complete,
    parse_json_object,
    render_template,
)
from gensearch.retrieval.search import SearchService

logger = logging.getLogger(__name__)

SUGGESTION_COUNT = 5
PREVIEW_K = 8
MIN_ADDED_WORDS = 3

# Suggest calls are debounced upstream (one request per input settled >=500ms)
# so the pipeline itself stays synchronous and stateless.
DEBOUNCE_MS = 500


@dataclass
class ConcretizedSuggestion:
    query: str
    explanation: str
    previews: list[tuple[str, float]] = field(default_factory=list)


@dataclass
class SuggestionBatch:
    suggestions: list[ConcretizedSuggestion]
    explanation: str
    # True when the model kept violating the added-words rule after a retry;
    # the batch is still surfaced so the suggestion UX degrades instead of failing.
    non_conforming: bool = False


def added_word_count(original: str, candidate: str) -> int:
    """Token-count difference after case-folded whitespace split."""
    return len(candidate.casefold().split()) - len(original.casefold().split())


class ConcretizePipeline:
    def __init__(
        self,
        provider: ChatProvider,
        search: SearchService | None = None,
        decoding: DecodingParams | None = None,
    ):
        self.provider = provider
        self.search = search
        self.decoding = decoding or DecodingParams()

    def suggest_queries(self, current_query: str) -> SuggestionBatch:
        """Render the concretization prompt and parse five suggested queries.

        Structural failures (wrong count, no JSON) get one retry and then
        raise; added-words violations get one retry and then surface the
        batch flagged ``non_conforming``.
        """
        current_query = current_query.strip()
        if not current_query:
            raise EmptyQuery("query is empty after trimming")
        bundle = render_template("concretize", {"curr_query": current_query})

        batch: SuggestionBatch | None = None
        last_error: Exception | None = None
        for attempt in (1, 2):
            try:
                raw = complete(self.provider, bundle, self.decoding)
                envelope = parse_json_object(raw, CONCRETIZE_SCHEMA, attempts=attempt)
            except (SchemaViolation, NoJsonFound) as exc:
                last_error = exc
                logger.warning("concretize attempt %d rejected: %s", attempt, exc)
                continue
            parsed = envelope.parsed
            suggestions = [
                ConcretizedSuggestion(query=q, explanation=parsed["explanation"])
                for q in parsed["search_queries"]
            ]
            conforming = all(
                added_word_count(current_query, s.query) >= MIN_ADDED_WORDS for s in suggestions
            )
            batch = SuggestionBatch(
                suggestions=suggestions,
                explanation=parsed["explanation"],
                non_conforming=not conforming,
            )
            if conforming:
                return batch
            logger.info("concretize attempt %d under-extends the query; retrying", attempt)
        if batch is not None:
            return batch
        raise last_error if last_error is not None else SchemaViolation("no usable completion")

    def attach_previews(self, batch: SuggestionBatch, k: int = PREVIEW_K) -> SuggestionBatch:
        """Fill each suggestion with its top-k search results.

        The five preview searches are independent and run concurrently; the
        batch is returned only once every preview is in place.
        """
        if self.search is None:
            raise ValueError("pipeline has no search service configured")
        with ThreadPoolExecutor(max_workers=len(batch.suggestions) or 1) as pool:
            pages = list(
                pool.map(lambda s: self.search.search_text(s.query, k=k, offset=0), batch.suggestions)
            )
        for suggestion, page in zip(batch.suggestions, pages):
            suggestion.previews = page.items
        return batch

    def suggest(self, current_query: str, k: int = PREVIEW_K) -> SuggestionBatch:
        """Full pipeline: suggestions plus previews."""
        return self.attach_previews(self.suggest_queries(current_query), k=k)
