"""Strict JSON extraction from model output.

Models habitually wrap their JSON in prose or code fences, so parsing scans
for the first balanced top-level object instead of trusting the whole text.
Validation is a pure function of the raw text and the schema.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator

import jsonschema

from gensearch.errors import NoJsonFound, SchemaViolation


@dataclass
class LlmJsonEnvelope:
    raw_text: str
    parsed: dict
    attempts: int = 1


def _balanced_spans(text: str) -> Iterator[str]:
    """Yield balanced ``{...}`` spans, honoring strings and escapes."""
    start = text.find("{")
    while start != -1:
        depth = 0
        in_string = False
        escaped = False
        for i in range(start, len(text)):
            ch = text[i]
            if in_string:
                if escaped:
                    escaped = False
                elif ch == "\\":
                    escaped = True
                elif ch == '"':
                    in_string = False
                continue
            if ch == '"':
                in_string = True
            elif ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    yield text[start : i + 1]
                    break
        start = text.find("{", start + 1)


def parse_json_object(raw_text: str, schema: dict, attempts: int = 1) -> LlmJsonEnvelope:
    """Extract and validate the first JSON object in ``raw_text``.

    Braced spans that fail to parse as JSON (prose in braces) are skipped;
    the first span that parses is the one validated against the schema.
    """
    parsed = None
    for span in _balanced_spans(raw_text):
        try:
            parsed = json.loads(span)
        except json.JSONDecodeError:
            continue
        break
    if not isinstance(parsed, dict):
        raise NoJsonFound("no balanced JSON object in model output")
    try:
        jsonschema.validate(parsed, schema)
    except jsonschema.ValidationError as exc:
        raise SchemaViolation(exc.message) from exc
    return LlmJsonEnvelope(raw_text=raw_text, parsed=parsed, attempts=attempts)
