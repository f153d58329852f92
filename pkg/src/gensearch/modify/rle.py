"""Row-major run-length encoding for binary masks.

Runs alternate zero-run, one-run, zero-run, ... over the flattened row-major
bitmap, always starting with a zero-run (possibly of length 0). Compact in
logs and exactly invertible, so mask equality is list equality.
"""

from __future__ import annotations

import numpy as np


def rle_encode(bitmap: np.ndarray) -> dict:
    """Encode a 2-D binary array as {"size": [h, w], "counts": [runs]}."""
    arr = np.asarray(bitmap)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D bitmap, got shape {arr.shape}")
    flat = (arr != 0).ravel()
    if flat.size == 0:
        raise ValueError("bitmap is empty")
    change_points = np.flatnonzero(flat[1:] != flat[:-1]) + 1
    boundaries = np.concatenate(([0], change_points, [flat.size]))
    runs = np.diff(boundaries).tolist()
    if flat[0]:
        runs.insert(0, 0)  # encoding starts from a zero-run by convention
    return {"size": [int(arr.shape[0]), int(arr.shape[1])], "counts": [int(r) for r in runs]}


def rle_decode(encoded: dict) -> np.ndarray:
    """Inverse of :func:`rle_encode`; returns a bool array of the stored size."""
    h, w = encoded["size"]
    counts = encoded["counts"]
    if sum(counts) != h * w:
        raise ValueError(f"run lengths sum to {sum(counts)}, expected {h * w}")
    flat = np.zeros(h * w, dtype=bool)
    pos = 0
    value = False
    for run in counts:
        if value:
            flat[pos : pos + run] = True
        pos += run
        value = not value
    return flat.reshape(h, w)
