"""Generative visual search: embedding retrieval over a local image corpus,
LLM-backed query concretization and keyword suggestion, and segment/mask-based
image modification whose outputs feed back into search."""

__version__ = "0.1.0"
