"""Record/replay provider backends.

A cassette is one JSON file mapping request digests to recorded response
bodies. Replay-only providers (no inner backend) raise on a miss instead
of ever touching the network; recording providers consult the cassette
first, so re-recording an already-captured session is a no-op.

File format:

    {
      "version": 1,
      "metadata": {"recorded_at": "...", "embedding_dimension": 384, ...},
      "entries": {
        "<sha256 digest>": {"provider": "search", "request": {...}, "response": ...}
      }
    }
"""

from __future__ import annotations

import copy
import json
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable

import numpy as np

from ..errors import CassetteMissError, ProviderError
from ..types import WebQuerySpec
from .base import request_digest

CASSETTE_VERSION = 1


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


class CassetteStore:
    """Digest-keyed response store with single-writer append semantics."""

    def __init__(self, path: str | Path | None = None, clock: Callable[[], str] = _utc_now):
        self.path = Path(path) if path else None
        self.entries: dict[str, dict] = {}
        self.metadata: dict[str, Any] = {}
        self._clock = clock
        self._lock = threading.Lock()

    @classmethod
    def load(cls, path: str | Path, clock: Callable[[], str] = _utc_now) -> "CassetteStore":
        store = cls(path, clock=clock)
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        if raw.get("version") != CASSETTE_VERSION:
            raise ProviderError("cassette", f"unsupported cassette version in {path}")
        store.metadata = dict(raw.get("metadata", {}))
        store.entries = dict(raw.get("entries", {}))
        return store

    def save(self, path: str | Path | None = None) -> Path:
        target = Path(path) if path else self.path
        if target is None:
            raise ValueError("no cassette path given")
        with self._lock:
            self.metadata.setdefault("recorded_at", self._clock())
            payload = {
                "version": CASSETTE_VERSION,
                "metadata": self.metadata,
                "entries": self.entries,
            }
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(
            json.dumps(payload, sort_keys=True, indent=1, ensure_ascii=True) + "\n",
            encoding="utf-8",
        )
        return target

    def has(self, provider_id: str, payload: Any) -> bool:
        digest = request_digest(provider_id, payload)
        with self._lock:
            return digest in self.entries

    def get(self, provider_id: str, payload: Any) -> Any:
        digest = request_digest(provider_id, payload)
        with self._lock:
            entry = self.entries.get(digest)
        if entry is None:
            raise CassetteMissError(provider_id, digest)
        return copy.deepcopy(entry["response"])

    def put(self, provider_id: str, payload: Any, response: Any) -> None:
        digest = request_digest(provider_id, payload)
        entry = {
            "provider": provider_id,
            "request": copy.deepcopy(payload),
            "response": copy.deepcopy(response),
        }
        with self._lock:
            self.entries[digest] = entry

    def __len__(self) -> int:
        with self._lock:
            return len(self.entries)


class _CassetteBacked:
    """Shared fetch path: recorded hit, else inner call + record, else miss."""

    provider_id: str

    def __init__(self, store: CassetteStore, inner=None):
        self.store = store
        self.inner = inner

    def _fetch(self, payload: Any, call: Callable[[], Any]) -> Any:
        if self.store.has(self.provider_id, payload):
            return self.store.get(self.provider_id, payload)
        if self.inner is None:
            return self.store.get(self.provider_id, payload)  # raises the miss
        response = call()
        self.store.put(self.provider_id, payload, response)
        return response


class CassetteNer(_CassetteBacked):
    provider_id = "ner"

    def tag(self, text: str) -> list[dict]:
        return self._fetch({"text": text}, lambda: self.inner.tag(text))


class CassetteEmbedding(_CassetteBacked):
    provider_id = "embedding"

    def __init__(self, store: CassetteStore, inner=None):
        super().__init__(store, inner)
        if inner is not None:
            self.store.metadata["embedding_dimension"] = inner.dimension
            limit = getattr(inner, "max_input_chars", None)
            if limit is not None:
                self.store.metadata["embedding_max_input_chars"] = limit

    @property
    def dimension(self) -> int:
        if self.inner is not None:
            return self.inner.dimension
        dim = self.store.metadata.get("embedding_dimension")
        if dim is None:
            raise ProviderError("embedding", "cassette lacks embedding_dimension metadata")
        return int(dim)

    @property
    def max_input_chars(self) -> int | None:
        if self.inner is not None:
            return getattr(self.inner, "max_input_chars", None)
        limit = self.store.metadata.get("embedding_max_input_chars")
        return None if limit is None else int(limit)

    def embed(self, text: str) -> np.ndarray:
        recorded = self._fetch(
            {"text": text}, lambda: np.asarray(self.inner.embed(text), dtype=float).tolist()
        )
        return np.asarray(recorded, dtype=float)


class CassetteLlm(_CassetteBacked):
    provider_id = "llm"

    def chat(self, messages: list[dict[str, str]], temperature: float = 0.1) -> str:
        payload = {"messages": messages, "temperature": temperature}
        return self._fetch(payload, lambda: self.inner.chat(messages, temperature=temperature))


class CassetteSearch(_CassetteBacked):
    provider_id = "search"

    def search(self, spec: WebQuerySpec) -> list[dict]:
        return self._fetch(spec.to_dict(), lambda: self.inner.search(spec))


class CassetteWiki(_CassetteBacked):
    provider_id = "wiki"

    def lookup(self, keyword: str) -> list[dict]:
        return self._fetch({"keyword": keyword}, lambda: self.inner.lookup(keyword))
