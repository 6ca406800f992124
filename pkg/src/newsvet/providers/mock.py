"""Deterministic in-process provider backends.

Every response is a pure function of the request plus a seed, keyed through
sha256 rather than Python's randomized hash(), so runs reproduce across
processes and platforms. The mocks produce plausible shapes, not plausible
content: capitalized-run "entities", seeded unit vectors, templated chat
replies routed by the prompt's task marker.
"""

from __future__ import annotations

import hashlib
import re

import numpy as np

from ..errors import ProviderError
from ..prompts import (
    TASK_CLAIM_EXTRACTION,
    TASK_DEBATE_CON,
    TASK_DEBATE_PRO,
    TASK_EXPERT,
    TASK_EXPERT_ROLE,
    TASK_JUDGE,
    TASK_JUDGE_FORCED,
    TASK_LINGUIST,
    TASK_VERIFICATION,
    classify_prompt,
    extract_article,
    extract_chunks,
)
from ..serialize import canonical_json
from ..types import WebQuerySpec


def stable_hash(text: str) -> int:
    """Non-negative 64-bit integer from sha256; stable across processes."""
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def _seeded_unit(key: str, dimension: int, nonneg: bool) -> np.ndarray:
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    rng = np.random.Generator(np.random.PCG64(int.from_bytes(digest[:16], "big")))
    vector = rng.standard_normal(dimension)
    if nonneg:
        vector = np.abs(vector)
    norm = float(np.linalg.norm(vector))
    if norm == 0.0:  # unreachable in practice, kept for total safety
        vector[0] = 1.0
        norm = 1.0
    return vector / norm


def mock_embed(
    text: str,
    seed: int = 0,
    dimension: int = 384,
    nonneg: bool = False,
    affinity: float = 0.0,
) -> np.ndarray:
    """Deterministic pseudo-random unit vector keyed by (seed, text).

    ``affinity`` in [0, 1) mixes in a seed-fixed shared direction so that
    any two texts embed with cosine around affinity squared; without it,
    high-dimensional random vectors are near-orthogonal and similarity-based
    stages see only noise.
    """
    if not 0.0 <= affinity < 1.0:
        raise ValueError("affinity must be in [0, 1)")
    vector = _seeded_unit(f"{seed}:{text}", dimension, nonneg)
    if affinity:
        base = _seeded_unit(f"affinity-base:{seed}", dimension, nonneg)
        vector = affinity * base + (1.0 - affinity**2) ** 0.5 * vector
        vector = vector / float(np.linalg.norm(vector))
    return vector


class MockEmbedding:
    """Seeded unit-vector embedder. ``nonneg`` restricts components to be
    non-negative, which keeps all cosines in [0, 1]."""

    def __init__(
        self,
        dimension: int = 384,
        seed: int = 0,
        nonneg: bool = False,
        affinity: float = 0.0,
        max_input_chars: int = 8192,
    ):
        self.dimension = dimension
        self.seed = seed
        self.nonneg = nonneg
        self.affinity = affinity
        self.max_input_chars = max_input_chars

    def embed(self, text: str) -> np.ndarray:
        return mock_embed(
            text,
            seed=self.seed,
            dimension=self.dimension,
            nonneg=self.nonneg,
            affinity=self.affinity,
        )


# ---------------------------------------------------------------------------
# NER
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"[A-Za-z][A-Za-z'’\-]*")
_LEADING_STOPWORDS = {
    "a", "an", "the", "in", "on", "at", "by", "of", "to", "and", "but", "or",
    "it", "he", "she", "they", "we", "i", "this", "that", "these", "those",
    "after", "before", "when", "while", "however", "meanwhile", "today",
}
_ENTITY_TYPES = ("PER", "ORG", "LOC", "MISC")


class MockNer:
    """Tags maximal runs of capitalized words as entities.

    Run type and token confidences are hash-derived; leading stopwords are
    dropped so sentence-initial articles do not leak into surfaces.
    """

    def __init__(self, seed: int = 0):
        self.seed = seed

    def tag(self, text: str) -> list[dict]:
        tokens = list(_TOKEN_RE.finditer(text))
        runs: list[list[re.Match]] = []
        current: list[re.Match] = []
        for match in tokens:
            capitalized = match.group(0)[0].isupper()
            adjacent = bool(current) and text[current[-1].end(): match.start()] == " "
            if capitalized and (not current or adjacent):
                current.append(match)
            else:
                if current:
                    runs.append(current)
                current = [match] if capitalized else []
        if current:
            runs.append(current)

        tags: list[dict] = []
        for run in runs:
            while run and run[0].group(0).lower() in _LEADING_STOPWORDS:
                run = run[1:]
            if not run:
                continue
            surface = " ".join(m.group(0) for m in run)
            kind = _ENTITY_TYPES[stable_hash(f"type:{self.seed}:{surface}") % 4]
            for i, match in enumerate(run):
                token = match.group(0)
                conf_h = stable_hash(f"conf:{self.seed}:{token}:{match.start()}")
                tags.append(
                    {
                        "token": token,
                        "label": ("B-" if i == 0 else "I-") + kind,
                        "confidence": 0.5 + (conf_h % 5001) / 10000.0,
                        "start": match.start(),
                        "end": match.end(),
                    }
                )
        return tags


# ---------------------------------------------------------------------------
# Search and wiki
# ---------------------------------------------------------------------------

class MockSearch:
    """Hash-driven hit lists. Occasionally emits a wikipedia.org or news
    aggregator hit so downstream post-filters get exercised."""

    def __init__(self, seed: int = 0):
        self.seed = seed

    def search(self, spec: WebQuerySpec) -> list[dict]:
        key = canonical_json(spec.to_dict())
        joined = " ".join(spec.required_keywords)
        n = stable_hash(f"search:{self.seed}:{key}") % (spec.max_results + 4)
        hits = []
        for i in range(n):
            h = stable_hash(f"hit:{self.seed}:{key}:{i}")
            if h % 9 == 0:
                domain = "wikipedia.org"
            elif h % 9 == 1:
                domain = "news.google.com"
            else:
                domain = f"example-{h % 90}.org"
            hits.append(
                {
                    "url": f"https://{domain}/articles/{h % 100000}",
                    "title": f"Report {i + 1} on {joined}",
                    "snippet": (
                        f"Independent account {h % 9973} covering {joined} with dates, "
                        "figures, and named sources."
                    ),
                    "summary": (
                        f"Outlet {h % 89} summarizes the state of {joined} and notes "
                        "open questions."
                    ),
                }
            )
        return hits


_WIKI_DESCRIPTORS = ("film", "company", "river", "politician", "band", "novel", "settlement")


class MockWiki:
    """Hash-driven sense candidates; some keywords get no page at all and
    some get several senses, exercising omission and disambiguation."""

    def __init__(self, seed: int = 0):
        self.seed = seed

    def lookup(self, keyword: str) -> list[dict]:
        h = stable_hash(f"wiki:{self.seed}:{keyword}")
        if h % 7 == 0:
            return []
        count = 1 + h % 3
        candidates = []
        for m in range(count):
            hm = stable_hash(f"sense:{self.seed}:{keyword}:{m}")
            descriptor = _WIKI_DESCRIPTORS[hm % len(_WIKI_DESCRIPTORS)]
            title = keyword if m == 0 else f"{keyword} ({descriptor})"
            sentences = [
                f"{title} is a {descriptor} noted in public records.",
                f"It was first documented in {1890 + hm % 130}.",
                f"Commentators associate it with {keyword}.",
                f"Its catalog index is {hm % 997}.",
                "The entry remains under periodic review.",
            ]
            candidates.append(
                {
                    "title": title,
                    "description": f"a {descriptor} associated with {keyword}",
                    "summary": " ".join(sentences[: 2 + hm % 4]),
                }
            )
        return candidates


# ---------------------------------------------------------------------------
# Chat
# ---------------------------------------------------------------------------

_ROLES = (
    "political scientist",
    "economist",
    "public health specialist",
    "technology analyst",
    "sports journalist",
    "climate scientist",
)

_SENTENCE_SPLIT_RE = re.compile(r"(?<=[.!?])\s+")


class MockLlm:
    """Routes on the prompt's task marker and answers in the exact labeled
    format each template requests. Claims are sliced from the article block
    and quotes from the evidence chunks, so downstream verbatim checks hold
    (except one hash bucket that fabricates a quote to exercise the guard).
    """

    def __init__(self, seed: int = 0):
        self.seed = seed

    def chat(self, messages: list[dict[str, str]], temperature: float = 0.1) -> str:
        kind = classify_prompt(messages)
        h = stable_hash(f"llm:{self.seed}:{kind}:{canonical_json(messages)}")
        if kind in (TASK_LINGUIST, TASK_EXPERT):
            leaning = "Real" if h % 2 == 0 else "Fake"
            tone = "consistent with" if h % 2 == 0 else "at odds with"
            return (
                f"LEANING: {leaning}\n"
                f"RATIONALE: The signals on this dimension read {tone} routine "
                f"authentic reporting (marker {h % 997})."
            )
        if kind == TASK_EXPERT_ROLE:
            return f"ROLE: {_ROLES[h % len(_ROLES)]}"
        if kind == TASK_CLAIM_EXTRACTION:
            return self._claims(messages, h)
        if kind == TASK_VERIFICATION:
            return self._verification(messages, h)
        if kind in (TASK_DEBATE_PRO, TASK_DEBATE_CON):
            stance = (
                "stays coherent under the pooled evidence"
                if kind == TASK_DEBATE_PRO
                else "breaks down against the pooled evidence"
            )
            return (
                f"The account {stance}: cross-checking names, dates, and figures "
                f"leads to my side (line {h % 9973})."
            )
        if kind == TASK_JUDGE:
            return f"ASSESSMENT: {('Real', 'Fake', 'Insufficient')[h % 3]}"
        if kind == TASK_JUDGE_FORCED:
            return f"ASSESSMENT: {('Real', 'Fake')[h % 2]}"
        return "UNRECOGNIZED TASK"

    def _claims(self, messages, h: int) -> str:
        article = extract_article(messages)
        body = article.split("\n", 1)[1] if "\n" in article else article
        sentences = [s.strip() for s in _SENTENCE_SPLIT_RE.split(body) if s.strip()]
        if not sentences:
            return "CORE: The article makes an unverifiable assertion."
        lines = [f"CORE: {sentences[0][:200]}"]
        for sub in sentences[1: 1 + h % 3]:
            lines.append(f"SUB: {sub[:200]}")
        return "\n".join(lines)

    def _verification(self, messages, h: int) -> str:
        chunks = extract_chunks(messages)
        label = ("Supports", "Refutes", "NotEnoughInformation")[h % 3]
        lines = [
            f"LABEL: {label}",
            f"REASONING: Matching the claim against the chunks settles it (marker {h % 997}).",
        ]
        if label != "NotEnoughInformation" and chunks:
            if h % 11 == 0:
                lines.append("QUOTE: entirely fabricated quotation matching no chunk")
            else:
                _, text = chunks[h % len(chunks)]
                lines.append(f"QUOTE: {text[:60]}")
        return "\n".join(lines)


class ScriptedLlm:
    """Test double that replays canned responses and logs every call.

    ``by_kind`` maps a task marker to a response (str) or a queue of
    responses (list; the last entry repeats once exhausted). Calls that
    match no script fall through to ``responses``, a plain FIFO queue; an
    empty queue raises a provider error, which doubles as a failure
    injection point.
    """

    def __init__(self, responses=None, by_kind: dict | None = None):
        self.responses = list(responses or [])
        self.by_kind = {
            kind: list(value) if isinstance(value, list) else [value]
            for kind, value in (by_kind or {}).items()
        }
        self.calls: list[dict] = []

    def chat(self, messages: list[dict[str, str]], temperature: float = 0.1) -> str:
        kind = classify_prompt(messages)
        self.calls.append({"kind": kind, "messages": messages, "temperature": temperature})
        queue = self.by_kind.get(kind)
        if queue:
            return queue.pop(0) if len(queue) > 1 else queue[0]
        if self.responses:
            return self.responses.pop(0)
        raise ProviderError("llm", "script exhausted")
