from gensearch.corpus.records import GenerationProvenance, ImageRecord
from gensearch.corpus.store import CorpusStore, CorpusSummary, SkippedLine

__all__ = [
    "ImageRecord",
    "GenerationProvenance",
    "CorpusStore",
    "CorpusSummary",
    "SkippedLine",
]
