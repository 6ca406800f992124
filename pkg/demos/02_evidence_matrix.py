"""Build the four-quadrant evidence matrix for one article: the article
itself, open-web search hits, disambiguated wiki summaries, and a marker
for the model's own internal knowledge.

Uses the deterministic mock providers. Run with:
python3 demos/02_evidence_matrix.py
"""

from newsvet.config import PipelineConfig
from newsvet.entities import aggregate_units, attach_sentence_indices, tag_tokens
from newsvet.keywords import select_keywords
from newsvet.pipeline import keyword_contexts
from newsvet.providers import mock_providers
from newsvet.retrieval import build_web_query, fetch_web, fetch_wiki
from newsvet.salience import EmbeddingCache, score_all
from newsvet.types import InfoMatrix, NewsDocument

config = PipelineConfig(embedding_dim=64, seed=7)
providers = mock_providers(config)

doc = NewsDocument.from_text(
    "demo-2",
    "Grain terminal reopens after inspection",
    "The Ostler Grain Terminal reopened on Friday after a safety inspection. "
    "Inspector Dana Whitfield cleared the conveyor system for full operation. "
    "Shipments to the Port of Calder resume next week under a revised schedule. "
    "Union representatives praised the transparency of the inspection report. "
    "The terminal handles nearly a third of the region's winter exports.",
)

# Keywords first; the retrieval quadrants are driven entirely by them.
cache = EmbeddingCache(providers.embed)
units = attach_sentence_indices(aggregate_units(tag_tokens(doc, providers.ner)), doc)
keywords = select_keywords(score_all(units, doc, cache), cache, gamma=config.gamma)
print(f"Keywords: {keywords.keywords}")

# --- Quadrant 2: open-web evidence -------------------------------------------
# One conjunctive query over all keywords. Aggregator and encyclopedia
# domains are excluded up front and filtered again defensively on the way
# back, so a hit list can shrink but never carries recycled articles.

spec = build_web_query(keywords, max_results=config.max_web_results)
print(f"\nQuery keywords (conjunctive): {spec.required_keywords}")
print(f"Excluded verticals: {sorted(spec.excluded_verticals)}, "
      f"excluded domains: {sorted(spec.excluded_domains)}")

web, degraded = fetch_web(spec, providers.search)
print(f"Search degraded: {degraded}")
for hit in web:
    print(f"  rank {hit.rank}: {hit.url}")
    print(f"    {hit.snippet[:70]}")

# --- Quadrant 3: wiki knowledge ----------------------------------------------
# Each keyword is looked up; when a title is ambiguous, the sense whose
# description best matches the keyword's sentence window wins. Summaries
# are clipped to three sentences.

contexts = keyword_contexts(keywords, units, doc)
wiki = fetch_wiki(
    keywords, contexts, providers.wiki, cache,
    summary_sentences=config.wiki_summary_sentences,
    parallelism=config.wiki_parallelism,
)
for entry in wiki:
    print(f"\n  {entry.keyword!r} -> {entry.chosen_sense_title!r} "
          f"({entry.candidate_count} candidate senses)")
    print(f"    {entry.summary_3_sentences[:100]}")

# --- Assemble ----------------------------------------------------------------

matrix = InfoMatrix(in_news=doc, out_of_news=web, wiki_knowledge=wiki)
print(f"\nQuadrant sizes: in_news=1 article, out_of_news={len(matrix.out_of_news)}, "
      f"wiki_knowledge={len(matrix.wiki_knowledge)}")
print(f"Internal knowledge note: {matrix.internal_knowledge_note!r}")
print(f"Matrix digest: {matrix.digest()}")
