"""Evidence retrieval: web query construction, open-web fetch, wiki sense
disambiguation, and assembly of the four-quadrant evidence matrix.

Web retrieval degrades to an empty quadrant instead of failing the
pipeline; wiki keywords without a page are simply omitted. Disambiguation
picks the sense whose description, substituted into the keyword's own
sentence window, stays closest to that window.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from urllib.parse import urlparse

import numpy as np

from .errors import ProviderError
from .salience import LocalContext, split_sentences
from .types import (
    InfoMatrix,
    KeywordSet,
    NewsDocument,
    WebEvidence,
    WebQuerySpec,
    WikiCandidate,
    WikiEntry,
)
from .vectors import cosine

logger = logging.getLogger(__name__)

# Hosts that aggregate other outlets' reporting; excluded post-hoc because
# the query-level vertical exclusion cannot be trusted across engines.
NEWS_AGGREGATOR_HOSTS = {
    "news.google.com",
    "news.yahoo.com",
    "apple.news",
    "flipboard.com",
    "smartnews.com",
    "ground.news",
}


def build_web_query(keywords: KeywordSet, max_results: int = 10) -> WebQuerySpec:
    """Conjunctive query over the deduplicated keywords, excluding the news
    vertical and wikipedia."""
    seen: list[str] = []
    for kw in keywords.keywords:
        if kw not in seen:
            seen.append(kw)
    if not seen:
        raise ValueError("no query terms")
    return WebQuerySpec(required_keywords=seen, max_results=max_results)


def _host_excluded(url: str, spec: WebQuerySpec) -> bool:
    host = (urlparse(url).hostname or "").lower()
    if not host:
        return False
    for domain in set(spec.excluded_domains) | NEWS_AGGREGATOR_HOSTS:
        if host == domain or host.endswith("." + domain):
            return True
    return False


def fetch_web(spec: WebQuerySpec, search) -> tuple[list[WebEvidence], bool]:
    """Returns (evidence, degraded). Provider failure yields ([], True)
    rather than an error; excluded hosts are filtered before truncation so
    a contaminated hit does not consume a result slot."""
    try:
        raw = search.search(spec)
    except ProviderError as exc:
        logger.warning("web retrieval degraded: %s", exc)
        return [], True
    evidence = []
    for item in raw:
        url = item.get("url", "")
        if _host_excluded(url, spec):
            logger.debug("dropping excluded-host hit: %s", url)
            continue
        snippet = item.get("snippet", "")
        summary = item.get("summary", "")
        if not snippet and not summary:
            continue
        evidence.append(
            WebEvidence(
                url=url,
                title=item.get("title", ""),
                snippet=snippet,
                summary=summary,
                rank=len(evidence) + 1,
                source_keywords=list(spec.required_keywords),
            )
        )
        if len(evidence) >= spec.max_results:
            break
    return evidence, False


# ---------------------------------------------------------------------------
# Wiki disambiguation
# ---------------------------------------------------------------------------

def disambiguate(keyword: str, ctx: LocalContext, candidates: list[WikiCandidate], embed) -> int:
    """Index of the sense whose description fits the context best.

    Each candidate's description replaces the keyword inside the context
    window; the winner maximizes cosine between the original and modified
    window. Ties go to the lowest index. A keyword missing from its own
    window (unusual, but possible after normalization) falls back to
    appending the description.
    """
    if not candidates:
        raise ValueError("no candidates to disambiguate")
    present = keyword in ctx.text
    if not present:
        logger.debug("keyword %r absent from its context; appending descriptions", keyword)
    v_ctx = np.asarray(embed.embed(ctx.text), dtype=float)
    best_index = 0
    best_score = -np.inf
    for index, candidate in enumerate(candidates):
        if present:
            modified = ctx.text.replace(keyword, candidate.description)
        else:
            modified = ctx.text + " " + candidate.description
        score = cosine(v_ctx, np.asarray(embed.embed(modified), dtype=float))
        if score > best_score:
            best_score = score
            best_index = index
    return best_index


def truncate_sentences(text: str, limit: int) -> str:
    """First ``limit`` sentences under the module's own splitter."""
    sentences = split_sentences(text)
    return " ".join(sentences[:limit])


def _fetch_one_wiki(
    keyword: str, ctx: LocalContext, wiki, embed, summary_sentences: int
) -> WikiEntry | None:
    raw = wiki.lookup(keyword)
    if not raw:
        logger.info("no wiki page for keyword %r; omitted", keyword)
        return None
    candidates = [
        WikiCandidate(
            title=item.get("title", ""),
            description=item.get("description", ""),
            summary=item.get("summary", ""),
        )
        for item in raw
    ]
    chosen = candidates[0] if len(candidates) == 1 else candidates[
        disambiguate(keyword, ctx, candidates, embed)
    ]
    return WikiEntry(
        keyword=keyword,
        chosen_sense_title=chosen.title,
        summary_3_sentences=truncate_sentences(chosen.summary, summary_sentences),
        candidate_count=len(candidates),
    )


def fetch_wiki(
    keywords: KeywordSet,
    contexts: dict[str, LocalContext],
    wiki,
    embed,
    summary_sentences: int = 3,
    parallelism: int = 4,
) -> list[WikiEntry]:
    """One entry per keyword that has a page; entry order follows keyword
    order regardless of fetch concurrency."""
    work = [kw for kw in keywords.keywords if kw in contexts]
    for kw in keywords.keywords:
        if kw not in contexts:
            logger.warning("keyword %r has no context; skipped for wiki lookup", kw)

    def job(kw: str) -> WikiEntry | None:
        return _fetch_one_wiki(kw, contexts[kw], wiki, embed, summary_sentences)

    if parallelism > 1 and len(work) > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(job, work))
    else:
        results = [job(kw) for kw in work]
    return [entry for entry in results if entry is not None]


def assemble_matrix(
    doc: NewsDocument, web: list[WebEvidence], wiki: list[WikiEntry]
) -> InfoMatrix:
    return InfoMatrix(in_news=doc, out_of_news=list(web), wiki_knowledge=list(wiki))
