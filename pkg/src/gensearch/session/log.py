"""Append-only session event log with JSON-lines persistence.

One file per session, one event per line. Events are flushed and fsynced
before the append is acknowledged, so a replayed log always reproduces the
exact event list. Writers are serialized per session; seq is strictly
increasing from 1.
"""

from __future__ import annotations

import json
import os
import threading
from datetime import datetime, timezone
from pathlib import Path

from gensearch.errors import MalformedLog, StorageFailure, UnknownSession
from gensearch.session.events import SessionEvent, event_from_dict


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class SessionStore:
    """Per-session append-only logs under a directory (or purely in memory)."""

    def __init__(self, directory: str | Path | None = None):
        self.directory = Path(directory) if directory is not None else None
        if self.directory is not None:
            self.directory.mkdir(parents=True, exist_ok=True)
        self._events: dict[str, list[SessionEvent]] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def _session_lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            if session_id not in self._locks:
                self._locks[session_id] = threading.Lock()
                self._events.setdefault(session_id, [])
            return self._locks[session_id]

    def _log_path(self, session_id: str) -> Path:
        assert self.directory is not None
        return self.directory / f"{session_id}.jsonl"

    def ensure(self, session_id: str) -> None:
        """Register a session (idempotent); used on a client's first contact."""
        self._session_lock(session_id)

    # -- writing ------------------------------------------------------------

    def record_event(self, session_id: str, kind: str, data: dict | None = None) -> int:
        """Append one event; the session is created implicitly on first use.

        Returns the assigned seq. The event is durable on disk before this
        returns.
        """
        lock = self._session_lock(session_id)
        with lock:
            seq = len(self._events[session_id]) + 1
            event = SessionEvent(
                session_id=session_id, seq=seq, ts=_now(), kind=kind, data=dict(data or {})
            )
            event.validate()
            if self.directory is not None:
                try:
                    with open(self._log_path(session_id), "a", encoding="utf-8") as fh:
                        fh.write(json.dumps(event.to_dict()) + "\n")
                        fh.flush()
                        os.fsync(fh.fileno())
                except OSError as exc:
                    raise StorageFailure(str(exc)) from exc
            self._events[session_id].append(event)
            return seq

    # -- reading ------------------------------------------------------------

    def exists(self, session_id: str) -> bool:
        return session_id in self._events or (
            self.directory is not None and self._log_path(session_id).is_file()
        )

    def events(self, session_id: str) -> list[SessionEvent]:
        if session_id in self._events:
            return list(self._events[session_id])
        if self.directory is not None and self._log_path(session_id).is_file():
            loaded = load_log(self._log_path(session_id))
            with self._session_lock(session_id):
                if not self._events[session_id]:
                    self._events[session_id] = loaded
            return list(loaded)
        raise UnknownSession(session_id)

    def session_ids(self) -> list[str]:
        ids = set(self._events)
        if self.directory is not None:
            ids.update(p.stem for p in self.directory.glob("*.jsonl"))
        return sorted(ids)

    # -- derived views -------------------------------------------------------

    def recent_text_queries(self, session_id: str, limit: int = 5) -> list[str]:
        """The last ``limit`` text search queries, oldest of them first."""
        queries = [e.data["query"] for e in self.events(session_id) if e.kind == "text_search"]
        return queries[-limit:]

    def saved_image_ids(self, session_id: str, limit: int | None = None) -> list[str]:
        """Currently saved image ids after save/unsave replay, most recent last."""
        saved: dict[str, None] = {}
        for event in self.events(session_id):
            if event.kind == "save":
                saved.pop(event.data["image_id"], None)
                saved[event.data["image_id"]] = None
            elif event.kind == "unsave":
                saved.pop(event.data["image_id"], None)
        ids = list(saved)
        return ids if limit is None else ids[-limit:]


def load_log(path: str | Path) -> list[SessionEvent]:
    """Parse a JSON-lines event log; any bad line is an error with its number."""
    events: list[SessionEvent] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                events.append(event_from_dict(json.loads(line)))
            except (json.JSONDecodeError, ValueError) as exc:
                raise MalformedLog(line_no, str(exc)) from exc
    return events
