from gensearch.modify.generate import (
    GenerationResult,
    ModifyService,
    StubKeywordBackend,
    StubReferenceBackend,
)
from gensearch.modify.masks import MaskSpec, MaskStore, assemble_mask
from gensearch.modify.rle import rle_decode, rle_encode
from gensearch.modify.segmentation import GridSegmentationProvider, Segment, SegmentMap

__all__ = [
    "rle_encode",
    "rle_decode",
    "Segment",
    "SegmentMap",
    "GridSegmentationProvider",
    "MaskSpec",
    "MaskStore",
    "assemble_mask",
    "GenerationResult",
    "ModifyService",
    "StubReferenceBackend",
    "StubKeywordBackend",
]
