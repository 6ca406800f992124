"""Run the analysis agents over one article and its evidence matrix: five
linguistic dimensions, two knowledge dimensions judged by a self-assigned
domain expert, and claim-by-claim verification grounded in retrieved text.

Uses the deterministic mock providers. Run with:
python3 demos/03_agent_collaboration.py
"""

from newsvet.agents import run_collaboration
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
    "demo-3",
    "Observatory claims nightly aurora over equator",
    "The Meridian Observatory claims an aurora now appears nightly over the equator. "
    "Director Paul Stanton says the glow is visible from every continent at once. "
    "No other observatory has recorded the phenomenon this year. "
    "Stanton attributes the silence to outdated instruments elsewhere. "
    "A visitor center opens in June to view the permanent lights.",
)

# Assemble the evidence matrix the same way the pipeline does.
cache = EmbeddingCache(providers.embed)
units = attach_sentence_indices(aggregate_units(tag_tokens(doc, providers.ner)), doc)
keywords = select_keywords(score_all(units, doc, cache), cache, gamma=config.gamma)
web, _degraded = fetch_web(build_web_query(keywords), providers.search)
wiki = fetch_wiki(keywords, keyword_contexts(keywords, units, doc), providers.wiki, cache)
matrix = InfoMatrix(in_news=doc, out_of_news=web, wiki_knowledge=wiki)

report = run_collaboration(doc, matrix, providers.llm, cache, config)

# --- Linguist: five style dimensions, article text only ----------------------
# Each dimension runs in its own isolated chat session so one answer cannot
# contaminate the next.

print("Linguist signals:")
for signal in report.linguist:
    print(f"  {signal.dimension.value:20s} leans {signal.leaning.value:4s}  "
          f"{signal.rationale[:60]}")

# --- Expert: self-assigned role, two knowledge dimensions --------------------
# The expert sees the wiki quadrant as background; the linguist never does.

print(f"\nExpert role: {report.expert_role!r}")
for signal in report.expert:
    print(f"  {signal.dimension.value:20s} leans {signal.leaning.value:4s}  "
          f"{signal.rationale[:60]}")

# --- Claims and grounded verification ----------------------------------------
# The core claim plus subsidiary claims are extracted, then each is checked
# against the open-web quadrant. Every quote in a verdict is a verbatim
# substring of a retrieved chunk; fabricated quotes are stripped, and a
# decisive label that loses all its quotes is downgraded.

if report.claims:
    print(f"\nCore claim: {report.claims.core!r}")
    for sub in report.claims.subs:
        print(f"  subsidiary: {sub!r}")

print("\nClaim verdicts:")
for verdict in report.verdicts:
    print(f"  [{verdict.label.value}] {verdict.claim[:60]}")
    print(f"    reasoning: {verdict.reasoning[:70]}")
    for quote in verdict.evidence_quotes:
        print(f"    quote (chunks {verdict.context_chunk_ids}): {quote[:60]!r}")

if report.flags:
    print(f"\nFlags: {report.flags}")
