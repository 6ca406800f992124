"""Live HTTP provider backends.

Endpoints come from PipelineConfig; API keys come only from environment
variables named in the config. Transient failures (connection errors, 5xx)
are retried with exponential backoff up to the configured budget, client
errors are not. Everything raises ProviderError once the budget is spent,
which the pipeline maps to stage errors or degraded mode.
"""

from __future__ import annotations

import logging
import os
import time

import requests

from ..config import PipelineConfig
from ..errors import ProviderError
from ..types import WebQuerySpec

logger = logging.getLogger(__name__)


def _auth_headers(env_var: str) -> dict[str, str]:
    key = os.environ.get(env_var, "")
    return {"Authorization": f"Bearer {key}"} if key else {}


class _HttpClient:
    provider_id: str

    def __init__(self, config: PipelineConfig):
        self.config = config

    def _request(self, method: str, url: str, **kwargs) -> requests.Response:
        if not url:
            raise ProviderError(self.provider_id, "no endpoint configured")
        attempt = 0
        while True:
            try:
                response = requests.request(
                    method, url, timeout=self.config.timeout_seconds, **kwargs
                )
                if response.status_code >= 500:
                    raise requests.RequestException(f"server error {response.status_code}")
                if response.status_code >= 400:
                    raise ProviderError(
                        self.provider_id,
                        f"HTTP {response.status_code}: {response.text[:200]}",
                    )
                return response
            except ProviderError:
                raise
            except requests.RequestException as exc:
                if attempt >= self.config.retry_budget:
                    raise ProviderError(
                        self.provider_id,
                        f"request failed after {attempt + 1} attempts: {exc}",
                    ) from exc
                delay = self.config.retry_backoff * (2**attempt)
                logger.warning("%s retry %d in %.1fs: %s", self.provider_id, attempt + 1, delay, exc)
                time.sleep(delay)
                attempt += 1


class LiveNer(_HttpClient):
    """Token-classification endpoint; accepts the common inference-API shape
    and maps alternate key names onto {token, label, confidence, start, end}."""

    provider_id = "ner"

    def tag(self, text: str) -> list[dict]:
        response = self._request(
            "POST",
            self.config.ner_url,
            json={"inputs": text},
            headers=_auth_headers(self.config.ner_api_key_env),
        )
        items = response.json()
        if not isinstance(items, list):
            raise ProviderError("ner", f"unexpected response shape: {type(items).__name__}")
        tags = []
        for item in items:
            tags.append(
                {
                    "token": item.get("token", item.get("word", "")),
                    "label": item.get("label", item.get("entity", "")),
                    "confidence": float(item.get("confidence", item.get("score", 0.0))),
                    "start": int(item["start"]),
                    "end": int(item["end"]),
                }
            )
        return tags


class LiveEmbedding(_HttpClient):
    provider_id = "embedding"
    max_input_chars = 8192

    @property
    def dimension(self) -> int:
        return self.config.embedding_dim

    def embed(self, text: str):
        response = self._request(
            "POST",
            self.config.embedding_url,
            json={"inputs": text},
            headers=_auth_headers(self.config.embedding_api_key_env),
        )
        data = response.json()
        vector = data.get("embedding") if isinstance(data, dict) else data
        if not isinstance(vector, list) or len(vector) != self.dimension:
            raise ProviderError(
                "embedding",
                f"expected a {self.dimension}-dimensional vector in the response",
            )
        return [float(x) for x in vector]


class LiveLlm(_HttpClient):
    """Chat-completions endpoint with the common choices/message shape."""

    provider_id = "llm"

    def chat(self, messages: list[dict[str, str]], temperature: float = 0.1) -> str:
        response = self._request(
            "POST",
            self.config.llm_url,
            json={
                "model": self.config.llm_model,
                "messages": messages,
                "temperature": temperature,
            },
            headers=_auth_headers(self.config.llm_api_key_env),
        )
        data = response.json()
        try:
            return data["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise ProviderError("llm", f"unexpected response shape: {exc}") from exc


class LiveSearch(_HttpClient):
    """Web search endpoint. The conjunctive query quotes every keyword;
    domain exclusions are rendered as -site: operators and vertical
    exclusions passed as a parameter for engines that support it."""

    provider_id = "search"

    def search(self, spec: WebQuerySpec) -> list[dict]:
        terms = [f'"{kw}"' for kw in spec.required_keywords]
        terms += [f"-site:{domain}" for domain in sorted(spec.excluded_domains)]
        response = self._request(
            "GET",
            self.config.search_url,
            params={
                "q": " ".join(terms),
                "count": spec.max_results,
                "exclude_verticals": ",".join(sorted(spec.excluded_verticals)),
            },
            headers=_auth_headers(self.config.search_api_key_env),
        )
        data = response.json()
        rows = data.get("results", data) if isinstance(data, dict) else data
        if not isinstance(rows, list):
            raise ProviderError("search", "unexpected response shape")
        hits = []
        for row in rows:
            hits.append(
                {
                    "url": row.get("url", ""),
                    "title": row.get("title", ""),
                    "snippet": row.get("snippet", row.get("description", "")),
                    "summary": row.get("summary", row.get("description", "")),
                }
            )
        return hits


class LiveWiki(_HttpClient):
    """Wiki lookup against a MediaWiki action API: one title search, then
    one extract call per candidate title."""

    provider_id = "wiki"
    search_limit = 5

    def lookup(self, keyword: str) -> list[dict]:
        response = self._request(
            "GET",
            self.config.wiki_url,
            params={
                "action": "query",
                "list": "search",
                "srsearch": keyword,
                "srlimit": self.search_limit,
                "format": "json",
            },
        )
        rows = response.json().get("query", {}).get("search", [])
        candidates = []
        for row in rows:
            title = row.get("title", "")
            if not title:
                continue
            extract = self._extract(title)
            if not extract:
                continue
            first_sentence = extract.split(". ", 1)[0]
            candidates.append(
                {"title": title, "description": first_sentence, "summary": extract}
            )
        return candidates

    def _extract(self, title: str) -> str:
        response = self._request(
            "GET",
            self.config.wiki_url,
            params={
                "action": "query",
                "prop": "extracts",
                "exintro": 1,
                "explaintext": 1,
                "titles": title,
                "format": "json",
            },
        )
        pages = response.json().get("query", {}).get("pages", {})
        for page in pages.values():
            text = page.get("extract", "")
            if text:
                return " ".join(text.split())
        return ""
