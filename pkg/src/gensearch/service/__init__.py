"""HTTP service: configuration, wiring, and the FastAPI application."""

from gensearch.service.app import create_app
from gensearch.service.config import ServiceConfig, load_config
from gensearch.service.runtime import Runtime

__all__ = ["ServiceConfig", "load_config", "Runtime", "create_app"]
