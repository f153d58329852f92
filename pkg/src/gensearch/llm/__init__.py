from gensearch.llm.jsonparse import LlmJsonEnvelope, parse_json_object
from gensearch.llm.providers import (
    ChatProvider,
    ChatRequest,
    DecodingParams,
    FixtureChatProvider,
    RemoteChatProvider,
    complete,
)
from gensearch.llm.templates import (
    CONCRETIZE_SCHEMA,
    KEYWORDS_SCHEMA,
    PromptBundle,
    render_template,
)

__all__ = [
    "PromptBundle",
    "render_template",
    "CONCRETIZE_SCHEMA",
    "KEYWORDS_SCHEMA",
    "ChatProvider",
    "ChatRequest",
    "DecodingParams",
    "FixtureChatProvider",
    "RemoteChatProvider",
    "complete",
    "parse_json_object",
    "LlmJsonEnvelope",
]
