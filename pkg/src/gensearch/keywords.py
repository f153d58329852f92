"""Keyword suggestion pipeline for keyword-based image modification.

From the current image's description plus the session's recent queries and
saved-image descriptions, the model proposes five intent-aligned and five
intent-diversifying single words. Anything already present in the context is
filtered out so every surviving term is genuinely new to the user.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

from gensearch.errors import NoJsonFound, SchemaViolation
from gensearch.llm import (
    KEYWORDS_SCHEMA,
    ChatProvider,
    DecodingParams,
    complete,
    parse_json_object,
    render_template,
)

logger = logging.getLogger(__name__)

HISTORY_LIMIT = 5
TERMS_PER_LIST = 5

_TOKEN_RE = re.compile(r"[^0-9a-z]+")


@dataclass
class ContextBundle:
    """Session context for keyword suggestion; lists hold at most the last five
    entries, most recent last."""

    current_image_description: str
    recent_queries: list[str] = field(default_factory=list)
    saved_descriptions: list[str] = field(default_factory=list)

    def all_texts(self) -> list[str]:
        return [self.current_image_description, *self.recent_queries, *self.saved_descriptions]


@dataclass
class KeywordSuggestion:
    explanation: str
    aligned: list[str]
    diversified: list[str]
    # True when filtering left fewer than five terms in either list even
    # after the retry; the shortened suggestion is still returned.
    short: bool = False


def build_context(session_store, corpus, session_id: str, image_id: str) -> ContextBundle:
    """Assemble the suggestion context from one session's history.

    Takes the last five text-search queries and the descriptions of the last
    five currently-saved images, both most recent last. A brand-new session
    yields empty lists, which is still a valid context.
    """
    from gensearch.errors import NotFound, UnknownImage, UnknownSession

    if not session_store.exists(session_id):
        raise UnknownSession(session_id)
    try:
        record = corpus.get_image(image_id)
    except NotFound:
        raise UnknownImage(image_id) from None
    saved_ids = session_store.saved_image_ids(session_id, limit=HISTORY_LIMIT)
    descriptions = [corpus.get_image(sid).description for sid in saved_ids if sid in corpus]
    return ContextBundle(
        current_image_description=record.description,
        recent_queries=session_store.recent_text_queries(session_id, limit=HISTORY_LIMIT),
        saved_descriptions=descriptions,
    )


def tokenize(text: str) -> set[str]:
    """Case-folded split on non-alphanumerics."""
    return {tok for tok in _TOKEN_RE.split(text.casefold()) if tok}


def context_tokens(context: ContextBundle) -> set[str]:
    tokens: set[str] = set()
    for text in context.all_texts():
        tokens |= tokenize(text)
    return tokens


def novelty_filter(terms: list[str], context: ContextBundle) -> list[str]:
    """Drop terms already present (as a token, case-folded) in any context
    text; deduplicate, keeping first occurrences; preserve order."""
    known = context_tokens(context)
    seen: set[str] = set()
    kept: list[str] = []
    for term in terms:
        folded = term.casefold()
        if folded in known or folded in seen:
            continue
        seen.add(folded)
        kept.append(term)
    return kept


def _single_words(terms: list[str]) -> list[str]:
    """Reject multi-word phrases; the contract asks for single words only."""
    return [t for t in terms if t.strip() and not re.search(r"\s", t.strip())]


class KeywordPipeline:
    def __init__(self, provider: ChatProvider, decoding: DecodingParams | None = None):
        self.provider = provider
        self.decoding = decoding or DecodingParams()

    def suggest_keywords(self, context: ContextBundle) -> KeywordSuggestion:
        """Render the keyword prompt, parse, and filter.

        If filtering drops either list below five terms, one retry runs with
        the dropped terms appended to the avoid-context; whatever remains is
        returned, flagged ``short`` when still under five.
        """
        dropped: list[str] = []
        last_error: Exception | None = None
        result: KeywordSuggestion | None = None
        for attempt in (1, 2):
            bindings = {
                "curr_image": context.current_image_description,
                "search_history": list(context.recent_queries) + (dropped if dropped else []),
                "saved_images": list(context.saved_descriptions),
            }
            bundle = render_template("keywords", bindings)
            try:
                raw = complete(self.provider, bundle, self.decoding)
                envelope = parse_json_object(raw, KEYWORDS_SCHEMA, attempts=attempt)
            except (SchemaViolation, NoJsonFound) as exc:
                last_error = exc
                logger.warning("keyword attempt %d rejected: %s", attempt, exc)
                continue
            parsed = envelope.parsed
            aligned_raw = _single_words(parsed["aligned_search_terms"])
            diversified_raw = _single_words(parsed["diversified_search_terms"])
            aligned = novelty_filter(aligned_raw, context)
            diversified = novelty_filter(diversified_raw, context)
            # The two lists must not overlap; aligned wins, duplicates leave
            # the diversified list.
            aligned_folded = {t.casefold() for t in aligned}
            diversified = [t for t in diversified if t.casefold() not in aligned_folded]

            candidate = KeywordSuggestion(
                explanation=parsed["explanation"],
                aligned=aligned[:TERMS_PER_LIST],
                diversified=diversified[:TERMS_PER_LIST],
            )
            if len(candidate.aligned) >= TERMS_PER_LIST and len(candidate.diversified) >= TERMS_PER_LIST:
                return candidate
            result = candidate
            removed = [
                t
                for t in parsed["aligned_search_terms"] + parsed["diversified_search_terms"]
                if t not in candidate.aligned and t not in candidate.diversified
            ]
            dropped = sorted(set(dropped) | set(removed))
            logger.info("keyword attempt %d left a short list; retrying", attempt)
        if result is not None:
            result.short = len(result.aligned) < TERMS_PER_LIST or len(result.diversified) < TERMS_PER_LIST
            return result
        raise last_error if last_error is not None else SchemaViolation("no usable completion")
