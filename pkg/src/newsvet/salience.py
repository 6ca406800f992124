"""Sentence handling and entity salience scoring.

An entity's importance is scored as the product of two cosines: how well
the entity aligns with its immediate sentence window, and how well that
window aligns with the full text. The product rewards entities that are
both locally central and globally on-topic, which resists the dilution
that a single entity-vs-document comparison suffers on long articles.
"""

from __future__ import annotations

import logging
import re
import threading
import unicodedata
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateEmbeddingError
from .types import EntityUnit, NewsDocument, SalienceMap
from .vectors import cosine

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Text normalization and sentence splitting
# ---------------------------------------------------------------------------

# Multi-letter abbreviations that do not end a sentence. Single capital
# letters ("A.", initials) deliberately do split.
_ABBREVIATIONS = {
    "mr", "mrs", "ms", "dr", "prof", "rev", "hon", "st", "jr", "sr",
    "vs", "etc", "e.g", "i.e", "cf", "al", "inc", "ltd", "co", "corp",
    "dept", "univ", "est", "approx", "no", "fig", "vol", "pp",
    "gen", "sen", "gov", "rep", "sgt", "col", "capt", "lt", "adm",
    "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept",
    "oct", "nov", "dec", "mon", "tue", "wed", "thu", "fri", "sat", "sun",
    "u.s", "u.k", "u.n", "d.c",
}

_TERMINAL_RE = re.compile(r"[.!?]+[\"'”’)\]]*")
_TRAILING_WORD_RE = re.compile(r"([A-Za-z][A-Za-z.]*)[.!?]*$")


def normalize_text(text: str) -> str:
    """Unicode NFC plus whitespace collapse; gives stable digests."""
    return re.sub(r"\s+", " ", unicodedata.normalize("NFC", text)).strip()


def _is_sentence_break(text: str, match: re.Match) -> bool:
    prefix = text[: match.start() + 1]  # include the first terminal char
    word = _TRAILING_WORD_RE.search(prefix[:-1].rstrip() + prefix[-1])
    if word:
        candidate = word.group(1).rstrip(".").lower()
        if len(candidate) > 1 and candidate in _ABBREVIATIONS:
            return False
    tail = text[match.end():]
    if not tail:
        return True
    if not tail[0].isspace():
        return False
    following = tail.lstrip()
    if not following:
        return True
    first = following[0]
    return first.isupper() or first.isdigit() or first in "\"'“‘([{"


def _sentence_boundaries(text: str) -> list[int]:
    """End offsets (exclusive) of each sentence in ``text``."""
    ends = []
    for match in _TERMINAL_RE.finditer(text):
        if _is_sentence_break(text, match):
            ends.append(match.end())
    if not text:
        return ends
    if not ends or ends[-1] < len(text):
        ends.append(len(text))
    return ends


def split_sentences(body: str) -> list[str]:
    """Deterministic rule-based sentence split.

    Splits after terminal punctuation unless the preceding word is a known
    abbreviation or the next character does not begin a new sentence. The
    sentences, joined with single spaces, reconstruct the normalized body.
    """
    sentences = []
    start = 0
    for end in _sentence_boundaries(body):
        piece = body[start:end].strip()
        if piece:
            sentences.append(piece)
        start = end
    return sentences


def sentence_spans(body: str) -> list[tuple[int, int]]:
    """Character span of each sentence as returned by :func:`split_sentences`."""
    spans = []
    start = 0
    for end in _sentence_boundaries(body):
        piece = body[start:end]
        stripped = piece.strip()
        if stripped:
            lead = len(piece) - len(piece.lstrip())
            spans.append((start + lead, start + lead + len(stripped)))
        start = end
    return spans


def sentence_index_for_offset(spans: list[tuple[int, int]], offset: int) -> int:
    """Index of the sentence containing ``offset``; gaps map to the nearest
    preceding sentence."""
    if not spans:
        raise ValueError("no sentences")
    idx = 0
    for i, (start, _end) in enumerate(spans):
        if offset >= start:
            idx = i
        else:
            break
    return idx


# ---------------------------------------------------------------------------
# Local context
# ---------------------------------------------------------------------------

@dataclass
class LocalContext:
    """The sentence window around one occurrence: previous, own, and next
    sentence joined with single spaces, clamped at document boundaries."""

    sentence_index: int
    text: str


def local_context(sentences: list[str], j: int) -> LocalContext:
    if j < 0 or j >= len(sentences):
        raise ValueError(f"sentence index {j} out of range for {len(sentences)} sentences")
    window = sentences[max(0, j - 1): j + 2]
    return LocalContext(sentence_index=j, text=" ".join(window))


# ---------------------------------------------------------------------------
# Embedding memoization
# ---------------------------------------------------------------------------

class EmbeddingCache:
    """Thread-safe memo of text -> embedding; bounds provider calls to one
    per distinct text."""

    def __init__(self, provider):
        self.provider = provider
        self._memo: dict[str, np.ndarray] = {}
        self._lock = threading.Lock()

    @property
    def dimension(self) -> int:
        return self.provider.dimension

    @property
    def max_input_chars(self) -> int | None:
        return getattr(self.provider, "max_input_chars", None)

    def embed(self, text: str) -> np.ndarray:
        limit = self.max_input_chars
        if limit is not None and len(text) > limit:
            text = text[:limit]  # head-first truncation, deterministic
        with self._lock:
            cached = self._memo.get(text)
        if cached is not None:
            return cached
        vector = np.asarray(self.provider.embed(text), dtype=float)
        with self._lock:
            self._memo.setdefault(text, vector)
        return vector


def _as_cache(embed) -> EmbeddingCache:
    return embed if isinstance(embed, EmbeddingCache) else EmbeddingCache(embed)


# ---------------------------------------------------------------------------
# Hierarchical salience
# ---------------------------------------------------------------------------

def hierarchical_salience(entity: EntityUnit, doc: NewsDocument, embed) -> float:
    """Score one entity as cos(entity, context) * cos(context, full text).

    When the entity occurs in several sentences the score is the maximum
    over its occurrence contexts, so repeated mentions cannot dilute a
    strong one.
    """
    if not entity.sentence_indices:
        raise ValueError(f"entity {entity.surface!r} has no occurrence sentences")
    cache = _as_cache(embed)
    v_entity = cache.embed(entity.surface)
    v_text = cache.embed(doc.body)
    best: float | None = None
    for j in sorted(set(entity.sentence_indices)):
        ctx = local_context(doc.sentences, j)
        v_ctx = cache.embed(ctx.text)
        score = cosine(v_entity, v_ctx) * cosine(v_ctx, v_text)
        if best is None or score > best:
            best = score
    assert best is not None
    return best


def score_all(entities: list[EntityUnit], doc: NewsDocument, embed) -> SalienceMap:
    """Score every entity; per-entity embedding failures skip that entity.

    Distinct context texts are embedded once (shared cache), so two
    entities in the same sentence window cost one context embedding.
    Duplicate surfaces keep the higher score.
    """
    cache = _as_cache(embed)
    entries: dict[str, float] = {}
    for unit in entities:
        try:
            score = hierarchical_salience(unit, doc, cache)
        except DegenerateEmbeddingError as exc:
            logger.warning("skipping entity %r: %s", unit.surface, exc)
            continue
        prev = entries.get(unit.surface)
        if prev is None or score > prev:
            entries[unit.surface] = score
    return SalienceMap(entries=entries)
