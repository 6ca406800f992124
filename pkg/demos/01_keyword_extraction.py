"""Walk through the first half of the pipeline on one article: tag the
entities, score their salience, and pick a compact, diverse keyword set.

Uses the deterministic mock providers, so the output is identical on
every run. Run with: python3 demos/01_keyword_extraction.py
"""

from newsvet.config import PipelineConfig
from newsvet.entities import (
    aggregate_units,
    attach_sentence_indices,
    select_dynamic,
    tag_tokens,
)
from newsvet.keywords import select_keywords
from newsvet.providers import mock_providers
from newsvet.salience import EmbeddingCache, score_all
from newsvet.types import NewsDocument

config = PipelineConfig(embedding_dim=64, seed=7)
providers = mock_providers(config)

doc = NewsDocument.from_text(
    "demo-1",
    "Rivera announces harbor cleanup fund",
    "Mayor Elena Rivera announced a harbor cleanup fund on Tuesday. "
    "The Port Authority of Brindle Bay will match the city contribution. "
    "Rivera said dredging begins in March near the Old Cannery district. "
    "Environmental groups in Brindle Bay welcomed the announcement. "
    "A final vote is scheduled for the council session next week.",
)

# --- Entity extraction -----------------------------------------------------
# Token tags come back in BIO form; adjacent tagged tokens of the same type
# merge into one surface, and repeated mentions pool into a single unit.

tags = tag_tokens(doc, providers.ner)
units = attach_sentence_indices(aggregate_units(tags), doc)

print("Entity units:")
for unit in units:
    print(
        f"  {unit.surface!r:40s} type={unit.entity_type.value:6s} "
        f"confidence={unit.confidence:.3f} sentences={unit.sentence_indices}"
    )

# The confidence threshold relaxes until a minimum quorum survives, so a
# cautious tagger cannot starve the rest of the pipeline.
selected = select_dynamic(
    units, lambda_init=config.lambda_init,
    delta_lambda=config.delta_lambda, n_min=config.n_min,
)
print(f"\nSelected {len(selected)} of {len(units)} units (quorum {config.n_min})")

# --- Hierarchical salience --------------------------------------------------
# Each entity is scored as cos(entity, context window) * cos(window, body).
# The cache guarantees one embedding call per distinct text.

cache = EmbeddingCache(providers.embed)
salience = score_all(selected, doc, cache)

print("\nSalience scores (higher is more central):")
for surface, score in sorted(salience.entries.items(), key=lambda kv: -kv[1]):
    print(f"  {score:+.4f}  {surface}")

# --- Keyword selection ------------------------------------------------------
# Greedy marginal-relevance walk: the relevance weight decays with each
# accepted keyword, and selection stops when the best remaining marginal
# score falls to gamma times the previous accepted one.

keywords = select_keywords(salience, cache, gamma=config.gamma)

print(f"\nKeywords: {keywords.keywords}")
print("\nSelection trace:")
for step in keywords.selection_trace:
    if step.lambda_k is None:
        print(f"  seed      {step.surface!r} (salience argmax)")
    else:
        verdict = "accepted" if step.accepted else "stopped: below gamma threshold"
        print(
            f"  k={step.k}  lambda={step.lambda_k:.4f}  "
            f"mmr={step.mmr:+.4f}  {step.surface!r}  {verdict}"
        )
