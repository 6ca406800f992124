"""Parallel analysis agents: linguist, domain expert, claim extraction and
claim verification.

Each analysis dimension runs in its own isolated chat session. Structured
replies get one reprompt on parse failure, then a keyword fallback; a
dimension that still cannot be parsed is omitted and flagged rather than
guessed. Claim verification is grounded: quotes must be verbatim
substrings of the supplied context chunks, and an empty context
short-circuits to NotEnoughInformation without any provider call.
"""

from __future__ import annotations

import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import PipelineConfig
from .prompts import (
    REPROMPT_NUDGE,
    claim_extraction_prompt,
    expert_prompt,
    expert_role_prompt,
    linguist_prompt,
    render_wiki_entries,
    verification_prompt,
)
from .types import (
    EXPERT_DIMENSIONS,
    LINGUIST_DIMENSIONS,
    AgentReport,
    ClaimLabel,
    ClaimSet,
    ClaimVerdict,
    Dimension,
    DimensionSignal,
    InfoMatrix,
    Label,
    NewsDocument,
    WebEvidence,
)
from .vectors import cosine

logger = logging.getLogger(__name__)

_FIELD_RE = re.compile(r"^([A-Z]+):[ \t]*(.*)$", re.MULTILINE)
_FAKE_RE = re.compile(r"\bfake\b", re.IGNORECASE)
_REAL_RE = re.compile(r"\breal\b", re.IGNORECASE)

DEFAULT_EXPERT_ROLE = "general analyst"


def parse_fields(text: str) -> dict[str, list[str]]:
    """Labeled lines ("NAME: value") grouped by name, in order."""
    fields: dict[str, list[str]] = {}
    for match in _FIELD_RE.finditer(text):
        fields.setdefault(match.group(1), []).append(match.group(2).strip())
    return fields


def _keyword_leaning(text: str) -> Label | None:
    fake = len(_FAKE_RE.findall(text))
    real = len(_REAL_RE.findall(text))
    if fake > real:
        return Label.FAKE
    if real > fake:
        return Label.REAL
    return None


def _parse_leaning(text: str) -> tuple[Label, str] | None:
    fields = parse_fields(text)
    for value in fields.get("LEANING", []):
        try:
            leaning = Label.parse(value)
        except ValueError:
            continue
        rationale = " ".join(fields.get("RATIONALE", [])) or text.strip()
        return leaning, rationale
    return None


def _chat_with_reprompt(llm, messages, parse, temperature: float):
    """First reply, one nudge on parse failure. Returns (parsed, replies)."""
    first = llm.chat(messages, temperature=temperature)
    parsed = parse(first)
    if parsed is not None:
        return parsed, [first]
    retry_messages = messages + [
        {"role": "assistant", "content": first},
        {"role": "user", "content": REPROMPT_NUDGE},
    ]
    second = llm.chat(retry_messages, temperature=temperature)
    return parse(second), [first, second]


def _map_dimensions(jobs, concurrency: int):
    if concurrency > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=concurrency) as pool:
            return list(pool.map(lambda fn: fn(), jobs))
    return [fn() for fn in jobs]


def _analyze_dimension(
    llm, messages, dimension: Dimension, temperature: float
) -> DimensionSignal | None:
    parsed, replies = _chat_with_reprompt(llm, messages, _parse_leaning, temperature)
    if parsed is not None:
        leaning, rationale = parsed
        return DimensionSignal(dimension=dimension, leaning=leaning, rationale=rationale)
    for reply in reversed(replies):
        fallback = _keyword_leaning(reply)
        if fallback is not None:
            logger.info("dimension %s parsed by keyword fallback", dimension.value)
            return DimensionSignal(
                dimension=dimension, leaning=fallback, rationale=reply.strip()
            )
    return None


def linguist_analyze(
    doc: NewsDocument, llm, temperature: float = 0.1, concurrency: int = 1
) -> tuple[list[DimensionSignal], list[str]]:
    """Five isolated per-dimension sessions over the article text alone."""
    jobs = [
        (lambda d=dim: _analyze_dimension(
            llm, linguist_prompt(doc.title, doc.body, d.value), d, temperature
        ))
        for dim in LINGUIST_DIMENSIONS
    ]
    results = _map_dimensions(jobs, concurrency)
    signals = [s for s in results if s is not None]
    flags = [
        f"omitted:{dim.value}"
        for dim, s in zip(LINGUIST_DIMENSIONS, results)
        if s is None
    ]
    return signals, flags


def _parse_role(text: str) -> str | None:
    for value in parse_fields(text).get("ROLE", []):
        if value:
            return value
    return None


def expert_analyze(
    doc: NewsDocument,
    wiki_entries,
    llm,
    temperature: float = 0.1,
    concurrency: int = 1,
) -> tuple[str, list[DimensionSignal], list[str]]:
    """Role inference, then the two knowledge-grounded dimensions with wiki
    background in context."""
    flags: list[str] = []
    parsed, replies = _chat_with_reprompt(
        llm, expert_role_prompt(doc.title, doc.body), _parse_role, temperature
    )
    role = parsed
    if role is None:
        for reply in replies:
            line = reply.strip().splitlines()[0].strip() if reply.strip() else ""
            if line:
                role = line[:60]
                break
    if not role:
        role = DEFAULT_EXPERT_ROLE
        flags.append("expert-role:fallback")

    wiki_block = render_wiki_entries(wiki_entries)
    jobs = [
        (lambda d=dim: _analyze_dimension(
            llm, expert_prompt(doc.title, doc.body, d.value, role, wiki_block), d, temperature
        ))
        for dim in EXPERT_DIMENSIONS
    ]
    results = _map_dimensions(jobs, concurrency)
    signals = [s for s in results if s is not None]
    flags.extend(
        f"omitted:{dim.value}"
        for dim, s in zip(EXPERT_DIMENSIONS, results)
        if s is None
    )
    return role, signals, flags


def _parse_claims(text: str) -> ClaimSet | None:
    fields = parse_fields(text)
    cores = [c for c in fields.get("CORE", []) if c]
    if not cores:
        return None
    subs = [s for s in fields.get("SUB", []) if s]
    return ClaimSet(core=cores[0], subs=subs)


def extract_claims(
    doc: NewsDocument, llm, temperature: float = 0.1
) -> tuple[ClaimSet | None, list[str]]:
    parsed, _replies = _chat_with_reprompt(
        llm, claim_extraction_prompt(doc.title, doc.body), _parse_claims, temperature
    )
    if parsed is None:
        logger.warning("claim extraction failed twice for doc %s", doc.id)
        return None, ["claims:extraction-failed"]
    return parsed, []


# ---------------------------------------------------------------------------
# Claim context and verification
# ---------------------------------------------------------------------------

@dataclass
class ContextChunk:
    """One retrieval chunk offered to the verifier: snippet and summary of a
    web hit joined into a single passage."""

    id: int
    text: str
    similarity: float
    source_url: str = ""


def build_claim_context(
    claim: str,
    corpus: list[WebEvidence],
    embed,
    theta_sim: float = 0.1,
    top_k: int = 5,
) -> list[ContextChunk]:
    """Top-k chunks by cosine with the claim, then a similarity floor.

    Chunk ids are corpus indices, so verdicts can be traced back to the
    originating web hit.
    """
    if top_k < 1:
        raise ValueError("top_k must be at least 1")
    if not -1.0 <= theta_sim <= 1.0:
        raise ValueError("theta_sim must be in [-1, 1]")
    if not corpus:
        return []
    v_claim = np.asarray(embed.embed(claim), dtype=float)
    chunks = []
    for index, item in enumerate(corpus):
        text = " ".join(part for part in (item.snippet, item.summary) if part)
        if not text:
            continue
        sim = cosine(v_claim, np.asarray(embed.embed(text), dtype=float))
        chunks.append(ContextChunk(id=index, text=text, similarity=sim, source_url=item.url))
    chunks.sort(key=lambda c: (-c.similarity, c.id))
    return [c for c in chunks[:top_k] if c.similarity >= theta_sim]


_LABEL_ALIASES = {
    "supports": ClaimLabel.SUPPORTS,
    "support": ClaimLabel.SUPPORTS,
    "refutes": ClaimLabel.REFUTES,
    "refute": ClaimLabel.REFUTES,
    "notenoughinformation": ClaimLabel.NOT_ENOUGH_INFORMATION,
    "not enough information": ClaimLabel.NOT_ENOUGH_INFORMATION,
    "nei": ClaimLabel.NOT_ENOUGH_INFORMATION,
}


def _parse_verification(text: str) -> tuple[ClaimLabel, str, list[str]] | None:
    fields = parse_fields(text)
    for value in fields.get("LABEL", []):
        label = _LABEL_ALIASES.get(value.strip().lower())
        if label is None:
            continue
        reasoning = " ".join(fields.get("REASONING", [])) or text.strip()
        quotes = [q for q in fields.get("QUOTE", []) if q]
        return label, reasoning, quotes
    return None


def verify_claim(
    claim: str, context: list[ContextChunk], llm, temperature: float = 0.1
) -> ClaimVerdict:
    """Grounded ternary verdict for one claim.

    Quotes that are not verbatim substrings of any chunk are stripped; a
    Supports/Refutes whose quotes all got stripped is downgraded to
    NotEnoughInformation. An empty context never reaches the provider.
    """
    if not claim:
        raise ValueError("empty claim")
    if not context:
        return ClaimVerdict(
            claim=claim,
            label=ClaimLabel.NOT_ENOUGH_INFORMATION,
            reasoning="no evidence context retrieved",
        )
    parsed, replies = _chat_with_reprompt(
        llm, verification_prompt(claim, context), _parse_verification, temperature
    )
    if parsed is None:
        return ClaimVerdict(
            claim=claim,
            label=ClaimLabel.NOT_ENOUGH_INFORMATION,
            reasoning="verifier reply unparsable; " + replies[-1].strip()[:200],
        )
    label, reasoning, quotes = parsed
    valid_quotes = []
    chunk_ids: list[int] = []
    for quote in quotes:
        holders = [c.id for c in context if quote in c.text]
        if holders:
            valid_quotes.append(quote)
            chunk_ids.extend(h for h in holders if h not in chunk_ids)
        else:
            logger.info("stripped non-verbatim quote for claim %.40r", claim)
    if quotes and not valid_quotes and label is not ClaimLabel.NOT_ENOUGH_INFORMATION:
        label = ClaimLabel.NOT_ENOUGH_INFORMATION
        reasoning += " [downgraded: no verbatim evidence quotes survived validation]"
    return ClaimVerdict(
        claim=claim,
        label=label,
        reasoning=reasoning,
        evidence_quotes=valid_quotes,
        context_chunk_ids=sorted(chunk_ids),
    )


def run_collaboration(
    doc: NewsDocument,
    matrix: InfoMatrix,
    llm,
    embed,
    config: PipelineConfig | None = None,
) -> AgentReport:
    """Full analysis state: linguist, expert, claims, verification."""
    config = config or PipelineConfig()
    temperature = config.temperature
    concurrency = config.agent_concurrency

    linguist, flags = linguist_analyze(doc, llm, temperature, concurrency)
    role, expert, expert_flags = expert_analyze(
        doc, matrix.wiki_knowledge, llm, temperature, concurrency
    )
    flags = flags + expert_flags
    claims, claim_flags = extract_claims(doc, llm, temperature)
    flags += claim_flags

    verdicts: list[ClaimVerdict] = []
    if claims is not None:
        def job(claim: str) -> ClaimVerdict:
            context = build_claim_context(
                claim, matrix.out_of_news, embed, config.theta_sim, config.claim_top_k
            )
            return verify_claim(claim, context, llm, temperature)

        jobs = [(lambda c=claim: job(c)) for claim in claims.all_claims()]
        verdicts = _map_dimensions(jobs, concurrency)

    return AgentReport(
        linguist=linguist,
        expert_role=role,
        expert=expert,
        claims=claims,
        verdicts=verdicts,
        flags=flags,
    )
