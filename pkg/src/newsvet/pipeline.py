"""End-to-end orchestration for one document.

Stage order is fixed: entity extraction, salience, keyword selection,
evidence retrieval, agent collaboration, debate. Retrieval failures
degrade to empty evidence quadrants instead of aborting, and every stage
artifact lands on the Verdict so a run can be audited from its serialized
form alone.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from time import perf_counter

from .agents import run_collaboration
from .config import PipelineConfig
from .debate import render_evidence_pool, run_debate
from .entities import aggregate_units, attach_sentence_indices, select_dynamic, tag_tokens
from .errors import ProviderError, StageError
from .keywords import select_keywords
from .retrieval import assemble_matrix, build_web_query, fetch_web, fetch_wiki
from .salience import EmbeddingCache, LocalContext, local_context, score_all
from .types import EntityUnit, KeywordSet, NewsDocument, Verdict

logger = logging.getLogger(__name__)

FLAG_NO_ENTITIES = "degraded:no-entities"
FLAG_NO_KEYWORDS = "degraded:no-keywords"
FLAG_WEB_DEGRADED = "degraded:web-retrieval"


@contextmanager
def _stage(name: str, timings: dict[str, float]):
    start = perf_counter()
    try:
        yield
    except StageError:
        raise
    except ProviderError as exc:
        raise StageError(name, str(exc)) from exc
    finally:
        timings[name] = perf_counter() - start


def keyword_contexts(
    keywords: KeywordSet, entities: list[EntityUnit], doc: NewsDocument
) -> dict[str, LocalContext]:
    """Sentence window for each keyword, taken from its entity's first
    occurrence. Used as the disambiguation context."""
    by_surface = {}
    for unit in entities:
        if unit.surface not in by_surface and unit.sentence_indices:
            by_surface[unit.surface] = unit.sentence_indices[0]
    contexts = {}
    for keyword in keywords.keywords:
        j = by_surface.get(keyword)
        if j is None:
            logger.warning("keyword %r has no located occurrence; no context", keyword)
            continue
        contexts[keyword] = local_context(doc.sentences, j)
    return contexts


def run_pipeline(
    doc: NewsDocument, providers, config: PipelineConfig | None = None
) -> Verdict:
    config = config or PipelineConfig()
    if not doc.body.strip():
        raise StageError("pipeline", "empty document")
    if not doc.sentences:
        doc = NewsDocument.from_text(doc.id, doc.title, doc.body, doc.gold_label)

    timings: dict[str, float] = {}
    flags: list[str] = []
    cache = EmbeddingCache(providers.embed)

    with _stage("extract", timings):
        tags = tag_tokens(doc, providers.ner)
        units = attach_sentence_indices(aggregate_units(tags), doc)
        entities = select_dynamic(
            units, config.lambda_init, config.delta_lambda, config.n_min
        )
        if not entities:
            flags.append(FLAG_NO_ENTITIES)

    with _stage("salience", timings):
        salience = score_all(entities, doc, cache)

    with _stage("keywords", timings):
        keywords = select_keywords(salience, cache, config.gamma)
        if not keywords:
            flags.append(FLAG_NO_KEYWORDS)

    with _stage("retrieve", timings):
        if keywords:
            spec = build_web_query(keywords, config.max_web_results)
            contexts = keyword_contexts(keywords, entities, doc)
            with ThreadPoolExecutor(max_workers=2) as pool:
                web_future = pool.submit(fetch_web, spec, providers.search)
                wiki_future = pool.submit(
                    fetch_wiki,
                    keywords,
                    contexts,
                    providers.wiki,
                    cache,
                    config.wiki_summary_sentences,
                    config.wiki_parallelism,
                )
                web, degraded = web_future.result()
                wiki = wiki_future.result()
            if degraded:
                flags.append(FLAG_WEB_DEGRADED)
        else:
            web, wiki = [], []
        matrix = assemble_matrix(doc, web, wiki)

    with _stage("collaborate", timings):
        report = run_collaboration(doc, matrix, providers.llm, cache, config)

    with _stage("debate", timings):
        pool_text = render_evidence_pool(matrix, report)
        decision, source, transcript, debate_flags = run_debate(
            pool_text,
            report,
            providers.llm,
            r_max=config.max_debate_rounds,
            temperature=config.temperature,
        )
        flags.extend(debate_flags)

    return Verdict(
        doc_id=doc.id,
        decision=decision,
        decision_source=source,
        transcript=transcript,
        report=report,
        matrix_digest=matrix.digest(),
        entities=entities,
        salience=salience,
        keywords=keywords,
        matrix=matrix,
        flags=flags,
        timings=timings,
    )
