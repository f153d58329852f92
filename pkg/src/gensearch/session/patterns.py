"""Search-pattern analytics over a session's event list.

Transitions are consecutive pairs over the subsequence of search events only
(text and image searches); every other kind is invisible to the pairing
except that a modification event falling strictly between a pair marks it as
generation-interleaved. All measures are pure functions of the event list.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gensearch.errors import UnknownSession
from gensearch.session.events import (
    KIND_IMAGE_SEARCH,
    KIND_MODIFY,
    KIND_SAVE,
    KIND_SHOW_MORE,
    KIND_TEXT_SEARCH,
    KIND_UNSAVE,
    SEARCH_KINDS,
    SessionEvent,
)

PAIR_LABELS = ("TT", "TI", "II", "IT")


@dataclass
class Transition:
    from_kind: str  # "T" | "I"
    to_kind: str
    gen_between: bool

    @property
    def label(self) -> str:
        return self.from_kind + self.to_kind


@dataclass
class PatternReport:
    counts: dict[str, int] = field(
        default_factory=lambda: {"T": 0, "I": 0, "show_more": 0, "saves": 0}
    )
    transitions: dict[str, dict[str, int]] = field(
        default_factory=lambda: {
            label: {"with_gen": 0, "without_gen": 0} for label in PAIR_LABELS
        }
    )
    search_by_generation_rate: float = 0.0
    saved_via_generation_rate: float = 0.0

    def total_transitions(self) -> int:
        return sum(sum(split.values()) for split in self.transitions.values())

    def to_dict(self) -> dict:
        return {
            "counts": dict(self.counts),
            "transitions": {k: dict(v) for k, v in self.transitions.items()},
            "search_by_generation_rate": self.search_by_generation_rate,
            "saved_via_generation_rate": self.saved_via_generation_rate,
        }


def _letter(kind: str) -> str:
    return "T" if kind == KIND_TEXT_SEARCH else "I"


def transitions(events: list[SessionEvent]) -> list[Transition]:
    """Consecutive search-event pairs with their generation-interleave flag."""
    searches = [e for e in events if e.kind in SEARCH_KINDS]
    modify_seqs = [e.seq for e in events if e.kind == KIND_MODIFY]
    out: list[Transition] = []
    for prev, curr in zip(searches, searches[1:]):
        gen_between = any(prev.seq < seq < curr.seq for seq in modify_seqs)
        out.append(Transition(_letter(prev.kind), _letter(curr.kind), gen_between))
    return out


def pattern_report(events: list[SessionEvent]) -> PatternReport:
    report = PatternReport()

    image_searches = 0
    generated_searches = 0
    # Query tokens whose ranking came from searching with a generated image,
    # and every image id those rankings have surfaced (with first-seen seq).
    generated_tokens: set[str] = set()
    surfaced_by_generation: dict[str, int] = {}
    # Net saved set: image id -> seq of the save that currently holds.
    saved: dict[str, int] = {}

    for event in events:
        if event.kind == KIND_TEXT_SEARCH:
            report.counts["T"] += 1
        elif event.kind == KIND_IMAGE_SEARCH:
            report.counts["I"] += 1
            image_searches += 1
            if event.data.get("image_source") == "generated":
                generated_searches += 1
                token = event.data.get("query_token")
                if token:
                    generated_tokens.add(token)
                for image_id in event.data.get("result_ids", []):
                    surfaced_by_generation.setdefault(image_id, event.seq)
        elif event.kind == KIND_SHOW_MORE:
            report.counts["show_more"] += 1
            if event.data.get("query_token") in generated_tokens:
                for image_id in event.data.get("result_ids", []):
                    surfaced_by_generation.setdefault(image_id, event.seq)
        elif event.kind == KIND_SAVE:
            saved.pop(event.data["image_id"], None)
            saved[event.data["image_id"]] = event.seq
        elif event.kind == KIND_UNSAVE:
            saved.pop(event.data["image_id"], None)

    for transition in transitions(events):
        split = "with_gen" if transition.gen_between else "without_gen"
        report.transitions[transition.label][split] += 1

    report.counts["saves"] = len(saved)
    if image_searches:
        report.search_by_generation_rate = generated_searches / image_searches
    if saved:
        attributed = sum(
            1
            for image_id, save_seq in saved.items()
            if image_id in surfaced_by_generation and surfaced_by_generation[image_id] < save_seq
        )
        report.saved_via_generation_rate = attributed / len(saved)
    return report


def report_for_session(store, session_id: str) -> PatternReport:
    if not store.exists(session_id):
        raise UnknownSession(session_id)
    return pattern_report(store.events(session_id))
