"""Named-entity tagging, aggregation, and dynamic-threshold selection.

Token-level BIO tags from a provider are merged into entity units, scored
by mean token confidence, and filtered by a threshold that relaxes until
enough entities survive. The relaxation keeps short or low-confidence
articles from producing an empty entity set.
"""

from __future__ import annotations

import logging

from .errors import ProviderError, StageError
from .salience import sentence_index_for_offset, sentence_spans
from .types import EntityType, EntityUnit, NewsDocument, TokenTag

logger = logging.getLogger(__name__)

# Guard against float drift in the threshold loop: 0.8 - 8*0.1 must still
# count as >= 0.
_FLOOR_TOLERANCE = 1e-12


def tag_tokens(doc: NewsDocument, ner) -> list[TokenTag]:
    """Run the NER provider over the body; only entity tokens come back."""
    if not doc.body:
        return []
    try:
        raw = ner.tag(doc.body)
    except ProviderError as exc:
        raise StageError("entity-extraction", str(exc)) from exc
    tags = [
        TokenTag(
            token=item["token"],
            label=item["label"],
            confidence=float(item["confidence"]),
            start=int(item["start"]),
            end=int(item["end"]),
        )
        for item in raw
    ]
    tags.sort(key=lambda t: (t.start, t.end))
    return tags


def _split_bio(label: str) -> tuple[str, EntityType]:
    prefix, _, kind = label.partition("-")
    return prefix, EntityType.parse(kind or label)


def _run_surface(run: list[TokenTag]) -> str:
    """Rebuild the surface with original spacing: adjacent spans concatenate
    directly (subword pieces), any gap becomes a single space."""
    parts = [run[0].token]
    for prev, tag in zip(run, run[1:]):
        if tag.start > prev.end:
            parts.append(" ")
        parts.append(tag.token)
    return "".join(parts)


def aggregate_units(tags: list[TokenTag]) -> list[EntityUnit]:
    """Merge maximal B-X + I-X runs into units, then dedup by surface+type.

    An I-tag without a preceding B-tag of the same type starts its own unit
    (logged). A type change breaks the run. Confidence is the arithmetic
    mean over every member token across all merged occurrences; order of
    first appearance is preserved.
    """
    runs: list[list[TokenTag]] = []
    current: list[TokenTag] = []
    current_type: EntityType | None = None
    for tag in tags:
        prefix, kind = _split_bio(tag.label)
        if prefix == "O":
            # Providers normally emit entity tokens only; an O tag just
            # closes whatever run is open.
            if current:
                runs.append(current)
                current = []
                current_type = None
            continue
        if prefix == "B" or current_type is None or kind != current_type:
            if prefix == "I":
                logger.debug("orphan I-tag %r at %d starts a new unit", tag.label, tag.start)
            if current:
                runs.append(current)
            current = [tag]
            current_type = kind
        else:
            current.append(tag)
    if current:
        runs.append(current)

    units: dict[tuple[str, EntityType], dict] = {}
    for run in runs:
        _, kind = _split_bio(run[0].label)
        key = (_run_surface(run), kind)
        entry = units.setdefault(key, {"confidences": [], "occurrences": []})
        entry["confidences"].extend(t.confidence for t in run)
        entry["occurrences"].append((run[0].start, run[-1].end))

    return [
        EntityUnit(
            surface=surface,
            entity_type=kind,
            confidence=sum(e["confidences"]) / len(e["confidences"]),
            occurrences=list(e["occurrences"]),
        )
        for (surface, kind), e in units.items()
    ]


def attach_sentence_indices(units: list[EntityUnit], doc: NewsDocument) -> list[EntityUnit]:
    """Fill each unit's sentence_indices from its occurrence spans."""
    spans = sentence_spans(doc.body)
    for unit in units:
        seen: list[int] = []
        for start, _end in unit.occurrences:
            idx = sentence_index_for_offset(spans, start)
            if idx not in seen:
                seen.append(idx)
        unit.sentence_indices = seen
    return units


def select_dynamic(
    units: list[EntityUnit],
    lambda_init: float = 0.8,
    delta_lambda: float = 0.1,
    n_min: int = 3,
) -> list[EntityUnit]:
    """Keep units with confidence >= lambda, relaxing lambda by delta_lambda
    until at least n_min survive. If lambda would drop below zero, every
    unit is returned instead."""
    if lambda_init <= 0 or lambda_init > 1:
        raise ValueError("lambda_init must be in (0, 1]")
    if delta_lambda <= 0:
        raise ValueError("delta_lambda must be positive")
    if n_min < 0:
        raise ValueError("n_min must be non-negative")
    step = 0
    while True:
        threshold = lambda_init - step * delta_lambda
        if threshold < -_FLOOR_TOLERANCE:
            logger.info(
                "threshold floor reached with %d units below n_min=%d; keeping all",
                len(units), n_min,
            )
            return list(units)
        selected = [u for u in units if u.confidence >= threshold]
        if len(selected) >= n_min:
            return selected
        step += 1
