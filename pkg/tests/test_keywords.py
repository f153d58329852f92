"""Keyword suggestion pipeline: context assembly, filtering, retry behavior."""

from __future__ import annotations

import json

import pytest

from gensearch.corpus.store import CorpusStore
from gensearch.errors import UnknownImage, UnknownSession
from gensearch.keywords import (
    ContextBundle,
    KeywordPipeline,
    build_context,
    context_tokens,
    novelty_filter,
    tokenize,
)
from gensearch.session.log import SessionStore
from tests.conftest import write_corpus


def make_reply(aligned, diversified):
    return json.dumps(
        {
            "explanation": "reasoning",
            "aligned_search_terms": aligned,
            "diversified_search_terms": diversified,
        }
    )


class SequencedProvider:
    def __init__(self, *replies):
        self.replies = list(replies)
        self.calls = 0

    def complete(self, request):
        reply = self.replies[min(self.calls, len(self.replies) - 1)]
        self.calls += 1
        return reply


def empty_context(description="a plain background"):
    return ContextBundle(
        current_image_description=description, recent_queries=[], saved_descriptions=[]
    )


class TestTokenization:
    def test_case_folded_non_alnum_split(self):
        assert tokenize("Vintage-Style Poster, 2024!") == {"vintage", "style", "poster", "2024"}

    def test_context_tokens_cover_all_texts(self):
        context = ContextBundle(
            current_image_description="red poster",
            recent_queries=["blue sky"],
            saved_descriptions=["green hill"],
        )
        assert context_tokens(context) == {"red", "poster", "blue", "sky", "green", "hill"}


class TestNoveltyFilter:
    def test_drops_terms_present_in_context(self):
        context = ContextBundle(
            current_image_description="",
            recent_queries=["hiking poster design"],
            saved_descriptions=[],
        )
        assert novelty_filter(["bold", "poster"], context) == ["bold"]

    def test_empty_context_keeps_everything(self):
        assert novelty_filter(["bold", "poster"], empty_context("")) == ["bold", "poster"]

    def test_deduplicates_keeping_first(self):
        assert novelty_filter(["Bold", "bold", "fresh"], empty_context("")) == ["Bold", "fresh"]

    def test_case_folded_match(self):
        context = ContextBundle(
            current_image_description="MOUNTAIN view",
            recent_queries=[],
            saved_descriptions=[],
        )
        assert novelty_filter(["Mountain", "valley"], context) == ["valley"]


class TestBuildContext:
    def make_stores(self, tmp_path):
        manifest = write_corpus(tmp_path / "corpus", count=8)
        corpus = CorpusStore(dimension=64)
        corpus.ingest_manifest(manifest)
        sessions = SessionStore(tmp_path / "sessions")
        sessions.ensure("s1")
        return corpus, sessions

    def test_last_five_queries_in_order(self, tmp_path):
        corpus, sessions = self.make_stores(tmp_path)
        for i in range(7):
            sessions.record_event("s1", "text_search", {"query": f"q{i}"})
        context = build_context(sessions, corpus, "s1", "img-000")
        assert context.recent_queries == ["q2", "q3", "q4", "q5", "q6"]

    def test_new_session_is_valid_and_empty(self, tmp_path):
        corpus, sessions = self.make_stores(tmp_path)
        context = build_context(sessions, corpus, "s1", "img-001")
        assert context.recent_queries == []
        assert context.saved_descriptions == []
        assert "poster design number 1" in context.current_image_description

    def test_saved_descriptions_track_unsave(self, tmp_path):
        corpus, sessions = self.make_stores(tmp_path)
        sessions.record_event("s1", "save", {"image_id": "img-002"})
        sessions.record_event("s1", "save", {"image_id": "img-003"})
        sessions.record_event("s1", "unsave", {"image_id": "img-002"})
        context = build_context(sessions, corpus, "s1", "img-000")
        assert context.saved_descriptions == [corpus.get_image("img-003").description]

    def test_saved_descriptions_limit_five(self, tmp_path):
        corpus, sessions = self.make_stores(tmp_path)
        for i in range(6):
            sessions.record_event("s1", "save", {"image_id": f"img-{i:03d}"})
        context = build_context(sessions, corpus, "s1", "img-007")
        assert len(context.saved_descriptions) == 5
        assert context.saved_descriptions[-1] == corpus.get_image("img-005").description

    def test_unknown_session(self, tmp_path):
        corpus, sessions = self.make_stores(tmp_path)
        with pytest.raises(UnknownSession):
            build_context(sessions, corpus, "ghost", "img-000")

    def test_unknown_image(self, tmp_path):
        corpus, sessions = self.make_stores(tmp_path)
        with pytest.raises(UnknownImage):
            build_context(sessions, corpus, "s1", "ghost")


class TestPipeline:
    def test_full_lists_no_retry(self):
        provider = SequencedProvider(
            make_reply(
                ["alpine", "summit", "trail", "ridge", "pine"],
                ["minimalist", "vintage", "neon", "geometric", "watercolor"],
            )
        )
        result = KeywordPipeline(provider).suggest_keywords(empty_context())
        assert provider.calls == 1
        assert result.aligned == ["alpine", "summit", "trail", "ridge", "pine"]
        assert result.diversified == ["minimalist", "vintage", "neon", "geometric", "watercolor"]
        assert not result.short

    def test_context_terms_filtered_and_retried(self):
        # "mountain" collides with the context; first reply comes back short,
        # the retry must carry the dropped term in the avoid-context.
        first = make_reply(
            ["mountain", "summit", "trail", "ridge", "pine"],
            ["minimalist", "vintage", "neon", "geometric", "watercolor"],
        )
        second = make_reply(
            ["alpine", "summit", "trail", "ridge", "pine"],
            ["minimalist", "vintage", "neon", "geometric", "watercolor"],
        )
        provider = SequencedProvider(first, second)
        context = ContextBundle(
            current_image_description="mountain landscape",
            recent_queries=[],
            saved_descriptions=[],
        )
        result = KeywordPipeline(provider).suggest_keywords(context)
        assert provider.calls == 2
        assert result.aligned == ["alpine", "summit", "trail", "ridge", "pine"]
        assert not result.short

    def test_still_short_after_retry_is_flagged(self):
        reply = make_reply(
            ["mountain", "summit", "trail", "ridge", "pine"],
            ["minimalist", "vintage", "neon", "geometric", "watercolor"],
        )
        context = ContextBundle(
            current_image_description="mountain landscape",
            recent_queries=[],
            saved_descriptions=[],
        )
        provider = SequencedProvider(reply)
        result = KeywordPipeline(provider).suggest_keywords(context)
        assert provider.calls == 2
        assert result.short
        assert result.aligned == ["summit", "trail", "ridge", "pine"]

    def test_phrases_rejected(self):
        reply = make_reply(
            ["flat design", "summit", "trail", "ridge", "pine"],
            ["minimalist", "vintage", "neon", "geometric", "watercolor"],
        )
        provider = SequencedProvider(reply)
        result = KeywordPipeline(provider).suggest_keywords(empty_context())
        assert "flat design" not in result.aligned
        assert result.short  # only four aligned terms survive

    def test_aligned_wins_overlap(self):
        reply = make_reply(
            ["alpine", "summit", "trail", "ridge", "pine"],
            ["alpine", "vintage", "neon", "geometric", "watercolor"],
        )
        provider = SequencedProvider(reply)
        result = KeywordPipeline(provider).suggest_keywords(empty_context())
        assert "alpine" in result.aligned
        assert "alpine" not in result.diversified

    def test_output_disjoint_from_context_tokens(self):
        reply = make_reply(
            ["alpine", "summit", "trail", "ridge", "pine"],
            ["minimalist", "vintage", "neon", "geometric", "watercolor"],
        )
        context = ContextBundle(
            current_image_description="poster with pine forest",
            recent_queries=["vintage alpine art"],
            saved_descriptions=["neon city night"],
        )
        result = KeywordPipeline(SequencedProvider(reply)).suggest_keywords(context)
        known = context_tokens(context)
        for term in result.aligned + result.diversified:
            assert term.casefold() not in known
