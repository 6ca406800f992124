"""Small cosine-similarity helpers shared by scoring and selection."""

from __future__ import annotations

import numpy as np

from .errors import DegenerateEmbeddingError


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity of two vectors; zero-norm input is an error."""
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise DegenerateEmbeddingError("degenerate embedding")
    return float(np.dot(u, v) / (nu * nv))


def pairwise_cosine(vectors: np.ndarray) -> np.ndarray:
    """Pairwise cosine matrix for row vectors; symmetric, unit diagonal."""
    norms = np.linalg.norm(vectors, axis=1)
    if np.any(norms == 0.0):
        raise DegenerateEmbeddingError("degenerate embedding")
    unit = vectors / norms[:, None]
    sim = unit @ unit.T
    np.fill_diagonal(sim, 1.0)
    return np.clip(sim, -1.0, 1.0)
