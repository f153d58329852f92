"""Chat completion providers.

The wire protocol is deliberately small: {system, user, temperature,
max_tokens} in, {text} out. A fixture provider serves canned responses from a
directory so every pipeline is testable without a live model.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

from gensearch.errors import DeadlineExceeded, ProviderUnavailable
from gensearch.llm.templates import PromptBundle

# Creativity-oriented default; decoding knobs are configurable per call.
DEFAULT_TEMPERATURE = 0.7
DEFAULT_MAX_TOKENS = 1024
DEFAULT_DEADLINE = 30.0

# Cap on concurrent in-flight provider calls, shared per provider instance.
DEFAULT_CONCURRENCY = 4


@dataclass(frozen=True)
class DecodingParams:
    temperature: float = DEFAULT_TEMPERATURE
    max_tokens: int = DEFAULT_MAX_TOKENS
    deadline: float = DEFAULT_DEADLINE


@dataclass(frozen=True)
class ChatRequest:
    system: str
    user: str
    temperature: float = DEFAULT_TEMPERATURE
    max_tokens: int = DEFAULT_MAX_TOKENS
    deadline: float = DEFAULT_DEADLINE
    # Local-only hint, never sent over the wire; fixture providers key on it.
    template_id: str = ""


class ChatProvider(Protocol):
    def complete(self, request: ChatRequest) -> str: ...


def complete(provider: ChatProvider, bundle: PromptBundle, decoding: DecodingParams | None = None) -> str:
    """Run one completion for a rendered prompt bundle."""
    decoding = decoding or DecodingParams()
    return provider.complete(
        ChatRequest(
            system=bundle.system_prompt,
            user=bundle.user_prompt,
            temperature=decoding.temperature,
            max_tokens=decoding.max_tokens,
            deadline=decoding.deadline,
            template_id=bundle.template_id,
        )
    )


class FixtureChatProvider:
    """Serves canned responses from a directory, keyed by template id.

    Looks for ``<template_id>.json`` then ``<template_id>.txt``. Deterministic:
    the same file is returned on every call.
    """

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def complete(self, request: ChatRequest) -> str:
        for suffix in (".json", ".txt"):
            path = self.directory / f"{request.template_id}{suffix}"
            if path.is_file():
                return path.read_text(encoding="utf-8")
        raise ProviderUnavailable(
            f"no fixture for template {request.template_id!r} in {self.directory}"
        )


class RemoteChatProvider:
    """HTTP chat provider; POST the request fields, read {"text": ...}."""

    def __init__(
        self,
        endpoint: str,
        api_key: str | None = None,
        max_concurrency: int = DEFAULT_CONCURRENCY,
    ):
        self.endpoint = endpoint
        self.api_key = api_key
        self._slots = threading.Semaphore(max_concurrency)

    def complete(self, request: ChatRequest) -> str:
        import httpx

        headers = {}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        payload = {
            "system": request.system,
            "user": request.user,
            "temperature": request.temperature,
            "max_tokens": request.max_tokens,
        }
        with self._slots:
            try:
                resp = httpx.post(
                    self.endpoint, json=payload, headers=headers, timeout=request.deadline
                )
                resp.raise_for_status()
                return resp.json()["text"]
            except httpx.TimeoutException as exc:
                raise DeadlineExceeded(
                    f"no completion within {request.deadline}s from {self.endpoint}"
                ) from exc
            except Exception as exc:
                raise ProviderUnavailable(f"chat endpoint {self.endpoint}: {exc}") from exc
