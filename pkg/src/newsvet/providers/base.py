"""Provider interfaces and request digesting.

Five capabilities back the pipeline: token-level NER, sentence embedding,
chat completion, web search, and wiki lookup. Each is a small Protocol so
live HTTP clients, deterministic mocks, and cassette replays are
interchangeable. Requests are identified by a digest over the provider id
plus the canonically serialized payload; the digest is the cassette key.
"""

from __future__ import annotations

from typing import Any, Protocol, runtime_checkable

import numpy as np

from ..serialize import canonical_json, sha256_hex
from ..types import WebQuerySpec


@runtime_checkable
class NerProvider(Protocol):
    def tag(self, text: str) -> list[dict]:
        """Entity tokens only, each {token, label, confidence, start, end}
        with a B-/I- prefixed label, ordered by span."""
        ...


@runtime_checkable
class EmbeddingProvider(Protocol):
    dimension: int

    def embed(self, text: str) -> np.ndarray:
        """Fixed-dimension vector for the text."""
        ...


@runtime_checkable
class LlmProvider(Protocol):
    def chat(self, messages: list[dict[str, str]], temperature: float = 0.1) -> str:
        """Chat completion over [{role, content}, ...] messages."""
        ...


@runtime_checkable
class SearchProvider(Protocol):
    def search(self, spec: WebQuerySpec) -> list[dict]:
        """Rank-ordered hits, each {url, title, snippet, summary}."""
        ...


@runtime_checkable
class WikiProvider(Protocol):
    def lookup(self, keyword: str) -> list[dict]:
        """Candidate senses, each {title, description, summary}; empty list
        when no page exists."""
        ...


PROVIDER_IDS = ("ner", "embedding", "llm", "search", "wiki")


def request_digest(provider_id: str, payload: Any) -> str:
    """Stable key for one provider request."""
    if provider_id not in PROVIDER_IDS:
        raise ValueError(f"unknown provider id: {provider_id!r}")
    return sha256_hex(provider_id + "\n" + canonical_json(payload))
