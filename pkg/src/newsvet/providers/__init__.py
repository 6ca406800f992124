"""Provider wiring: one bundle of the five capabilities plus factories for
the three backend families.

Mock and replay bundles are built without any live client, so no code path
in those modes can reach the network. Recording wraps an existing bundle
and captures every response into a cassette.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ..config import PipelineConfig
from ..types import ProviderMode
from .base import (
    EmbeddingProvider,
    LlmProvider,
    NerProvider,
    SearchProvider,
    WikiProvider,
    request_digest,
)
from .cassette import (
    CassetteEmbedding,
    CassetteLlm,
    CassetteNer,
    CassetteSearch,
    CassetteStore,
    CassetteWiki,
)
from .mock import (
    MockEmbedding,
    MockLlm,
    MockNer,
    MockSearch,
    MockWiki,
    ScriptedLlm,
    mock_embed,
    stable_hash,
)

__all__ = [
    "CassetteEmbedding",
    "CassetteLlm",
    "CassetteNer",
    "CassetteSearch",
    "CassetteStore",
    "CassetteWiki",
    "EmbeddingProvider",
    "LlmProvider",
    "MockEmbedding",
    "MockLlm",
    "MockNer",
    "MockSearch",
    "MockWiki",
    "NerProvider",
    "ProviderSet",
    "ScriptedLlm",
    "SearchProvider",
    "WikiProvider",
    "live_providers",
    "mock_embed",
    "mock_providers",
    "recording_providers",
    "replay_providers",
    "request_digest",
    "stable_hash",
]

# Shared direction mixed into mock embeddings by the default factory; keeps
# mock cosines high enough that similarity-driven stages see real structure.
MOCK_AFFINITY = 0.92


@dataclass
class ProviderSet:
    ner: NerProvider
    embed: EmbeddingProvider
    llm: LlmProvider
    search: SearchProvider
    wiki: WikiProvider
    mode: ProviderMode


def mock_providers(config: PipelineConfig | None = None) -> ProviderSet:
    config = config or PipelineConfig()
    return ProviderSet(
        ner=MockNer(seed=config.seed),
        embed=MockEmbedding(
            dimension=config.embedding_dim, seed=config.seed, affinity=MOCK_AFFINITY
        ),
        llm=MockLlm(seed=config.seed),
        search=MockSearch(seed=config.seed),
        wiki=MockWiki(seed=config.seed),
        mode=ProviderMode.MOCK,
    )


def live_providers(config: PipelineConfig) -> ProviderSet:
    from .live import LiveEmbedding, LiveLlm, LiveNer, LiveSearch, LiveWiki

    return ProviderSet(
        ner=LiveNer(config),
        embed=LiveEmbedding(config),
        llm=LiveLlm(config),
        search=LiveSearch(config),
        wiki=LiveWiki(config),
        mode=ProviderMode.LIVE,
    )


def replay_providers(cassette_path: str | Path, config: PipelineConfig | None = None) -> ProviderSet:
    """Replay-only bundle: every request must hit the cassette."""
    store = CassetteStore.load(cassette_path)
    return ProviderSet(
        ner=CassetteNer(store),
        embed=CassetteEmbedding(store),
        llm=CassetteLlm(store),
        search=CassetteSearch(store),
        wiki=CassetteWiki(store),
        mode=ProviderMode.REPLAY,
    )


def recording_providers(
    cassette_path: str | Path, inner: ProviderSet, clock=None
) -> tuple[ProviderSet, CassetteStore]:
    """Wrap ``inner`` so every response is captured. Re-recording over an
    existing cassette replays captured entries instead of refetching. The
    caller saves the returned store when the session is done."""
    path = Path(cassette_path)
    if path.exists():
        store = CassetteStore.load(path) if clock is None else CassetteStore.load(path, clock=clock)
    else:
        store = CassetteStore(path) if clock is None else CassetteStore(path, clock=clock)
    wrapped = ProviderSet(
        ner=CassetteNer(store, inner.ner),
        embed=CassetteEmbedding(store, inner.embed),
        llm=CassetteLlm(store, inner.llm),
        search=CassetteSearch(store, inner.search),
        wiki=CassetteWiki(store, inner.wiki),
        mode=inner.mode,
    )
    return wrapped, store
