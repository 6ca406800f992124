"""Shared test doubles and fixtures."""

from __future__ import annotations

import numpy as np
import pytest

from newsvet.config import PipelineConfig
from newsvet.errors import ProviderError
from newsvet.types import NewsDocument


class FixedNer:
    """Returns the same tag list for every text."""

    def __init__(self, tags=None, fail=False):
        self.tags = tags or []
        self.fail = fail
        self.calls = 0

    def tag(self, text):
        self.calls += 1
        if self.fail:
            raise ProviderError("ner", "injected failure")
        return [dict(t) for t in self.tags]


class VectorEmbedding:
    """Maps exact texts to preset vectors; unknown texts are a test bug."""

    def __init__(self, mapping, dimension=None):
        self.mapping = {k: np.asarray(v, dtype=float) for k, v in mapping.items()}
        self.dimension = dimension or len(next(iter(self.mapping.values())))
        self.calls: list[str] = []

    def embed(self, text):
        self.calls.append(text)
        if text not in self.mapping:
            raise KeyError(f"no preset vector for text: {text!r}")
        return self.mapping[text]


class CountingEmbedding:
    """Wraps another embedder and counts calls per distinct text."""

    def __init__(self, inner):
        self.inner = inner
        self.dimension = inner.dimension
        self.counts: dict[str, int] = {}

    def embed(self, text):
        self.counts[text] = self.counts.get(text, 0) + 1
        return self.inner.embed(text)


class ListSearch:
    """Returns a preset hit list; records the query specs it sees."""

    def __init__(self, hits=None, fail=False):
        self.hits = hits or []
        self.fail = fail
        self.specs = []

    def search(self, spec):
        self.specs.append(spec)
        if self.fail:
            raise ProviderError("search", "injected failure")
        return [dict(h) for h in self.hits]


class DictWiki:
    """keyword -> candidate list; records lookups."""

    def __init__(self, pages=None):
        self.pages = pages or {}
        self.lookups = []

    def lookup(self, keyword):
        self.lookups.append(keyword)
        return [dict(c) for c in self.pages.get(keyword, [])]


SAMPLE_BODY = (
    "Senator Maria Delgado announced a new infrastructure bill in Sacramento on Tuesday. "
    "The bill allocates twelve billion dollars to bridge repair across California. "
    "Critics from the Pacific Policy Institute called the figure inflated. "
    "Governor Alan Reyes said the proposal would reach the Assembly floor next month. "
    "Delgado dismissed the criticism during a press conference at the Capitol."
)


@pytest.fixture
def sample_doc():
    return NewsDocument.from_text("doc-1", "Delgado unveils bridge bill", SAMPLE_BODY)


@pytest.fixture
def config():
    # Small embedding dim keeps vector-heavy tests fast.
    return PipelineConfig(embedding_dim=16, seed=3)
