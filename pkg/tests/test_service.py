"""HTTP surface tests: one event per gesture, headers, status mapping."""

from __future__ import annotations

import io
import re

import numpy as np
import pytest
from PIL import Image

from gensearch.modify.rle import rle_decode
from gensearch.session.patterns import pattern_report
from gensearch.session.log import SessionStore
from tests.conftest import make_runtime, write_corpus

SID = "feedcafe" * 4  # fixed session header for event assertions


def sid_headers():
    return {"X-Session-Id": SID}


def events_of(runtime, session_id=SID):
    return runtime.sessions.events(session_id)


def assert_error(response, status, name):
    assert response.status_code == status
    body = response.json()
    assert body["error"] == name
    assert body["detail"]


@pytest.fixture
def small_client(tmp_path):
    """Client over a 12-image corpus with 4-item pages, for pagination tests."""
    from fastapi.testclient import TestClient

    from gensearch.service.app import create_app

    manifest = write_corpus(tmp_path / "corpus")
    runtime = make_runtime(tmp_path, manifest, page_size=4)
    return TestClient(create_app(runtime)), runtime


class TestSessionHeader:
    def test_minted_when_absent(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        # health carries no session; search does
        response = client.get("/search", params={"q": "poster"})
        minted = response.headers["X-Session-Id"]
        assert re.fullmatch(r"[0-9a-f]{32}", minted)
        assert response.json()["session_id"] == minted

    def test_echoed_when_provided(self, client):
        response = client.get("/search", params={"q": "poster"}, headers=sid_headers())
        assert response.headers["X-Session-Id"] == SID
        assert response.json()["session_id"] == SID

    def test_fresh_ids_are_distinct(self, client):
        first = client.get("/search", params={"q": "a"}).headers["X-Session-Id"]
        second = client.get("/search", params={"q": "b"}).headers["X-Session-Id"]
        assert first != second


class TestHealth:
    def test_reports_corpus_stats(self, client, runtime):
        body = client.get("/health").json()
        assert body == {"status": "ok", "images": 12, "dimension": 64}


class TestSearch:
    def test_text_search_logs_one_event(self, client, runtime):
        response = client.get("/search", params={"q": "mountain poster"}, headers=sid_headers())
        body = response.json()
        assert response.status_code == 200
        events = events_of(runtime)
        assert [e.kind for e in events] == ["text_search"]
        assert events[0].data["query"] == "mountain poster"
        assert events[0].data["query_token"] == body["query_token"]
        assert events[0].data["result_ids"] == [item["image_id"] for item in body["items"]]

    def test_scores_non_increasing(self, client):
        items = client.get("/search", params={"q": "poster"}).json()["items"]
        scores = [item["score"] for item in items]
        assert scores == sorted(scores, reverse=True)

    def test_blank_query_still_searches(self, client, runtime):
        # Handlers stay thin: text search embeds whatever string arrives.
        response = client.get("/search", params={"q": "  "}, headers=sid_headers())
        assert response.status_code == 200
        assert len(response.json()["items"]) == 12

    def test_result_items_carry_metadata(self, client):
        item = client.get("/search", params={"q": "poster"}).json()["items"][0]
        assert item["source"] == "corpus"
        assert item["uri"] == f"/images/{item['image_id']}"
        assert "poster design" in item["description"]

    def test_similar_excludes_query_image(self, client, runtime):
        response = client.get("/similar", params={"image_id": "img-003"}, headers=sid_headers())
        body = response.json()
        assert "img-003" not in [item["image_id"] for item in body["items"]]
        assert len(body["items"]) == 11
        event = events_of(runtime)[0]
        assert event.kind == "image_search"
        assert event.data["image_id"] == "img-003"
        assert event.data["image_source"] == "corpus"

    def test_similar_unknown_image(self, client):
        assert_error(client.get("/similar", params={"image_id": "nope"}), 404, "NotFound")

    def test_more_continues_without_overlap(self, small_client):
        client, runtime = small_client
        first = client.get("/search", params={"q": "poster"}, headers=sid_headers()).json()
        assert len(first["items"]) == 4 and not first["exhausted"]
        second = client.get("/more", params={"token": first["query_token"]}, headers=sid_headers()).json()
        ids_a = {item["image_id"] for item in first["items"]}
        ids_b = {item["image_id"] for item in second["items"]}
        assert ids_a.isdisjoint(ids_b)
        assert second["offset"] == 4
        kinds = [e.kind for e in events_of(runtime)]
        assert kinds == ["text_search", "show_more"]

    def test_more_past_end_is_exhausted(self, small_client):
        client, _ = small_client
        token = client.get("/search", params={"q": "poster"}).json()["query_token"]
        last = {}
        for _ in range(5):
            last = client.get("/more", params={"token": token}).json()
        assert last["exhausted"] and last["items"] == []

    def test_more_unknown_token(self, client):
        assert_error(client.get("/more", params={"token": "bogus"}), 404, "NotFound")


class TestSuggest:
    def test_five_suggestions_with_previews(self, client, runtime):
        response = client.get("/suggest", params={"q": "hiking poster"}, headers=sid_headers())
        body = response.json()
        assert len(body["suggestions"]) == 5
        assert body["non_conforming"] is False
        for suggestion in body["suggestions"]:
            assert len(suggestion["previews"]) == 8
            scores = [p["score"] for p in suggestion["previews"]]
            assert scores == sorted(scores, reverse=True)
        events = events_of(runtime)
        assert [e.kind for e in events] == ["concretize_shown"]
        assert events[0].data == {"query": "hiking poster"}

    def test_empty_query_rejected(self, client):
        assert_error(client.get("/suggest", params={"q": ""}), 400, "EmptyQuery")


class TestSegmentsAndMask:
    def test_segment_grid(self, client):
        body = client.get("/segments", params={"image_id": "img-000"}).json()
        assert body["width"] == 32 and body["height"] == 32
        assert len(body["segments"]) == 16
        ids = [s["segment_id"] for s in body["segments"]]
        assert ids[0] == "r0c0" and ids[-1] == "r3c3"
        for segment in body["segments"]:
            bitmap = rle_decode(segment["rle"])
            assert bitmap.shape == (32, 32)
            assert int(bitmap.sum()) == segment["area"]

    def test_segments_log_no_event(self, client, runtime):
        client.get("/segments", params={"image_id": "img-000"}, headers=sid_headers())
        runtime.sessions.ensure(SID)
        assert events_of(runtime) == []

    def test_segments_unknown_image(self, client):
        assert_error(client.get("/segments", params={"image_id": "nope"}), 404, "UnknownImage")

    def test_mask_reports_union_area(self, client, runtime):
        body = client.post(
            "/mask", json={"image_id": "img-000", "segment_ids": ["r0c0", "r0c1"]}
        ).json()
        assert body["area"] == 128  # two 8x8 cells of a 32x32 image
        assert body["mask_id"].startswith("mask-")
        assert body["selected_segment_ids"] == ["r0c0", "r0c1"]
        runtime.sessions.ensure(SID)
        assert events_of(runtime) == []

    def test_mask_empty_selection(self, client):
        response = client.post("/mask", json={"image_id": "img-000", "segment_ids": []})
        assert_error(response, 400, "EmptySelection")

    def test_mask_unknown_segment(self, client):
        response = client.post("/mask", json={"image_id": "img-000", "segment_ids": ["r8c8"]})
        assert_error(response, 404, "UnknownSegment")


def make_mask(client, image_id, segment_ids=("r0c0", "r1c1")):
    return client.post(
        "/mask", json={"image_id": image_id, "segment_ids": list(segment_ids)}
    ).json()["mask_id"]


class TestGenerate:
    def test_reference_generation(self, client, runtime):
        mask_id = make_mask(client, "img-000")
        response = client.post(
            "/generate/reference",
            json={"image_id": "img-000", "mask_id": mask_id, "reference_image_id": "img-001"},
            headers=sid_headers(),
        )
        body = response.json()
        assert body["image_id"] == "gen-0001"
        assert body["mode"] == "reference"
        assert body["backend_id"] == "stub-reference"
        assert body["parent_image_id"] == "img-000"
        assert body["width"] == 32 and body["height"] == 32
        events = events_of(runtime)
        assert [e.kind for e in events] == ["modify"]
        assert events[0].data == {"mode": "reference", "image_id": "img-000", "result_id": "gen-0001"}

    def test_keyword_generation(self, client, runtime):
        mask_id = make_mask(client, "img-002")
        body = client.post(
            "/generate/keywords",
            json={"image_id": "img-002", "mask_id": mask_id, "keywords": ["neon", "bold"]},
            headers=sid_headers(),
        ).json()
        assert body["mode"] == "keywords"
        assert "neon, bold" in body["description"]
        assert events_of(runtime)[0].data["mode"] == "keywords"

    def test_generated_image_is_searchable(self, client, runtime):
        mask_id = make_mask(client, "img-000")
        gen_id = client.post(
            "/generate/reference",
            json={"image_id": "img-000", "mask_id": mask_id, "reference_image_id": "img-001"},
            headers=sid_headers(),
        ).json()["image_id"]
        response = client.get("/similar", params={"image_id": gen_id}, headers=sid_headers())
        assert response.status_code == 200
        assert gen_id not in [item["image_id"] for item in response.json()["items"]]
        event = events_of(runtime)[-1]
        assert event.kind == "image_search"
        assert event.data["image_source"] == "generated"

    def test_mask_mismatch(self, client):
        mask_id = make_mask(client, "img-000")
        response = client.post(
            "/generate/reference",
            json={"image_id": "img-001", "mask_id": mask_id, "reference_image_id": "img-002"},
        )
        assert_error(response, 400, "MaskMismatch")

    def test_empty_keywords(self, client):
        mask_id = make_mask(client, "img-000")
        response = client.post(
            "/generate/keywords",
            json={"image_id": "img-000", "mask_id": mask_id, "keywords": []},
        )
        assert_error(response, 400, "EmptyKeywords")

    def test_unknown_mask(self, client):
        response = client.post(
            "/generate/keywords",
            json={"image_id": "img-000", "mask_id": "mask-9999", "keywords": ["neon"]},
        )
        assert response.status_code == 404


class TestKeywords:
    def test_returns_both_lists(self, client, runtime):
        body = client.get("/keywords", params={"image_id": "img-000"}, headers=sid_headers()).json()
        assert len(body["aligned"]) == 5
        assert len(body["diversified"]) == 5
        assert body["short"] is False
        runtime.sessions.ensure(SID)
        assert events_of(runtime) == []  # read-only helper, not a gesture

    def test_unknown_image(self, client):
        assert_error(client.get("/keywords", params={"image_id": "nope"}), 404, "UnknownImage")


class TestSave:
    def test_save_and_unsave_round_trip(self, client, runtime):
        saved = client.post("/save", json={"image_id": "img-000"}, headers=sid_headers()).json()["saved"]
        assert saved == ["img-000"]
        saved = client.post("/save", json={"image_id": "img-001"}, headers=sid_headers()).json()["saved"]
        assert saved == ["img-000", "img-001"]
        saved = client.delete("/save", params={"image_id": "img-000"}, headers=sid_headers()).json()["saved"]
        assert saved == ["img-001"]
        assert [e.kind for e in events_of(runtime)] == ["save", "save", "unsave"]

    def test_save_unknown_image_logs_nothing(self, client, runtime):
        assert_error(client.post("/save", json={"image_id": "nope"}, headers=sid_headers()), 404, "NotFound")
        runtime.sessions.ensure(SID)
        assert events_of(runtime) == []


class TestClientEvents:
    def test_concretize_accepted_allowed(self, client, runtime):
        response = client.post(
            "/event",
            json={"kind": "concretize_accepted", "data": {"query": "vintage hiking poster"}},
            headers=sid_headers(),
        )
        assert response.status_code == 200
        assert response.json()["seq"] == 1
        assert events_of(runtime)[0].kind == "concretize_accepted"

    def test_server_side_kinds_rejected(self, client, runtime):
        response = client.post(
            "/event", json={"kind": "text_search", "data": {"query": "q"}}, headers=sid_headers()
        )
        assert response.status_code == 400
        runtime.sessions.ensure(SID)
        assert events_of(runtime) == []


class TestSessionEndpoints:
    def test_report_matches_replayed_events(self, client, runtime):
        client.get("/search", params={"q": "poster"}, headers=sid_headers())
        client.get("/similar", params={"image_id": "img-000"}, headers=sid_headers())
        client.post("/save", json={"image_id": "img-001"}, headers=sid_headers())
        report = client.get("/session/report", headers=sid_headers()).json()
        assert report == pattern_report(events_of(runtime)).to_dict()
        assert report["counts"] == {"T": 1, "I": 1, "show_more": 0, "saves": 1}

    def test_events_listing_in_order(self, client):
        client.get("/search", params={"q": "a"}, headers=sid_headers())
        client.get("/search", params={"q": "b"}, headers=sid_headers())
        events = client.get("/session/events", headers=sid_headers()).json()["events"]
        assert [e["seq"] for e in events] == [1, 2]
        assert [e["query"] for e in events] == ["a", "b"]

    def test_fresh_session_report_is_zeroed(self, client):
        report = client.get("/session/report").json()
        assert report["counts"] == {"T": 0, "I": 0, "show_more": 0, "saves": 0}


class TestImages:
    def test_png_round_trip(self, client, runtime):
        response = client.get("/images/img-000")
        assert response.status_code == 200
        assert response.headers["content-type"] == "image/png"
        pixels = np.asarray(Image.open(io.BytesIO(response.content)).convert("RGB"))
        assert np.array_equal(pixels, runtime.corpus.get_pixels("img-000"))

    def test_meta(self, client):
        body = client.get("/images/img-000/meta").json()
        assert body["image_id"] == "img-000"
        assert body["source"] == "corpus"
        assert body["provenance"] is None
        assert body["width"] == 32 and body["height"] == 32

    def test_generated_meta_carries_provenance(self, client):
        mask_id = make_mask(client, "img-000")
        gen_id = client.post(
            "/generate/keywords",
            json={"image_id": "img-000", "mask_id": mask_id, "keywords": ["neon"]},
        ).json()["image_id"]
        body = client.get(f"/images/{gen_id}/meta").json()
        assert body["source"] == "generated"
        assert body["provenance"]["mode"] == "keywords"
        assert body["provenance"]["parent_image_id"] == "img-000"

    def test_unknown_image(self, client):
        assert client.get("/images/nope").status_code == 404
        assert client.get("/images/nope/meta").status_code == 404


class TestOneEventPerGesture:
    def test_scripted_session(self, client, runtime):
        """Every gesture logs exactly one event; non-gestures log none."""
        token = client.get("/search", params={"q": "hiking poster"}, headers=sid_headers()).json()["query_token"]
        client.get("/similar", params={"image_id": "img-000"}, headers=sid_headers())
        client.get("/more", params={"token": token}, headers=sid_headers())
        client.get("/suggest", params={"q": "hiking poster"}, headers=sid_headers())
        client.post(
            "/event",
            json={"kind": "concretize_accepted", "data": {"query": "vintage hiking poster"}},
            headers=sid_headers(),
        )
        client.get("/segments", params={"image_id": "img-000"}, headers=sid_headers())
        mask_id = make_mask(client, "img-000")
        client.post(
            "/generate/reference",
            json={"image_id": "img-000", "mask_id": mask_id, "reference_image_id": "img-001"},
            headers=sid_headers(),
        )
        client.post("/save", json={"image_id": "img-002"}, headers=sid_headers())
        client.delete("/save", params={"image_id": "img-002"}, headers=sid_headers())
        client.get("/keywords", params={"image_id": "img-000"}, headers=sid_headers())
        client.get("/session/report", headers=sid_headers())
        client.get("/images/img-000", headers=sid_headers())

        events = events_of(runtime)
        assert [e.kind for e in events] == [
            "text_search",
            "image_search",
            "show_more",
            "concretize_shown",
            "concretize_accepted",
            "modify",
            "save",
            "unsave",
        ]
        assert [e.seq for e in events] == list(range(1, 9))

    def test_events_survive_restart(self, tmp_path):
        """Logs are durable: a rebuilt store on the same directory replays them."""
        from fastapi.testclient import TestClient

        from gensearch.service.app import create_app

        manifest = write_corpus(tmp_path / "corpus")
        runtime = make_runtime(tmp_path, manifest)
        client = TestClient(create_app(runtime))
        client.get("/search", params={"q": "poster"}, headers=sid_headers())
        client.post("/save", json={"image_id": "img-000"}, headers=sid_headers())

        reopened = SessionStore(runtime.sessions.directory)
        assert [e.kind for e in reopened.events(SID)] == ["text_search", "save"]
