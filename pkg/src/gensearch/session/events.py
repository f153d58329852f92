"""Session events.

Append-only action log entries. Search and show-more events additionally
carry the page's surfaced image ids and the query token, which is what lets
the analytics attribute later saves to the search that surfaced the image by
pure replay of the event list.
"""

from __future__ import annotations

from dataclasses import dataclass, field

KIND_TEXT_SEARCH = "text_search"
KIND_IMAGE_SEARCH = "image_search"
KIND_SHOW_MORE = "show_more"
KIND_SAVE = "save"
KIND_UNSAVE = "unsave"
KIND_MODIFY = "modify"
KIND_CONCRETIZE_SHOWN = "concretize_shown"
KIND_CONCRETIZE_ACCEPTED = "concretize_accepted"

ALL_KINDS = {
    KIND_TEXT_SEARCH,
    KIND_IMAGE_SEARCH,
    KIND_SHOW_MORE,
    KIND_SAVE,
    KIND_UNSAVE,
    KIND_MODIFY,
    KIND_CONCRETIZE_SHOWN,
    KIND_CONCRETIZE_ACCEPTED,
}

# The two kinds that count as search actions for transition analysis.
SEARCH_KINDS = (KIND_TEXT_SEARCH, KIND_IMAGE_SEARCH)

_REQUIRED_FIELDS = {
    KIND_TEXT_SEARCH: ("query",),
    KIND_IMAGE_SEARCH: ("image_id", "image_source"),
    KIND_SHOW_MORE: ("query_token",),
    KIND_SAVE: ("image_id",),
    KIND_UNSAVE: ("image_id",),
    KIND_MODIFY: ("mode", "image_id", "result_id"),
    KIND_CONCRETIZE_SHOWN: ("query",),
    KIND_CONCRETIZE_ACCEPTED: ("query",),
}


@dataclass(frozen=True)
class SessionEvent:
    session_id: str
    seq: int
    ts: str
    kind: str
    data: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.kind not in ALL_KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")
        for key in _REQUIRED_FIELDS[self.kind]:
            if key not in self.data:
                raise ValueError(f"{self.kind} event missing field {key!r}")
        if self.kind == KIND_IMAGE_SEARCH and self.data["image_source"] not in ("corpus", "generated"):
            raise ValueError(f"bad image_source {self.data['image_source']!r}")

    def to_dict(self) -> dict:
        return {"session_id": self.session_id, "seq": self.seq, "ts": self.ts, "kind": self.kind, **self.data}


def event_from_dict(raw: dict) -> SessionEvent:
    if not isinstance(raw, dict):
        raise ValueError("event line is not a JSON object")
    for key in ("session_id", "seq", "ts", "kind"):
        if key not in raw:
            raise ValueError(f"event missing field {key!r}")
    data = {k: v for k, v in raw.items() if k not in ("session_id", "seq", "ts", "kind")}
    event = SessionEvent(
        session_id=str(raw["session_id"]),
        seq=int(raw["seq"]),
        ts=str(raw["ts"]),
        kind=str(raw["kind"]),
        data=data,
    )
    event.validate()
    return event
