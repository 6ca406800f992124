"""Domain types shared across the pipeline.

Plain dataclasses and enums only; behaviour lives in the stage modules.
Everything reachable from a Verdict serializes to JSON-compatible dicts via
``to_dict`` so verdicts can be emitted as canonical JSONL.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Label(str, Enum):
    REAL = "Real"
    FAKE = "Fake"

    @classmethod
    def parse(cls, value: str) -> "Label":
        folded = value.strip().lower()
        if folded == "real":
            return cls.REAL
        if folded == "fake":
            return cls.FAKE
        raise ValueError(f"unknown label value: {value!r}")


class DecisionSource(str, Enum):
    JUDGE = "Judge"
    FORCED_JUDGE = "ForcedJudge"
    FALLBACK_MAJORITY = "FallbackMajority"


class Assessment(str, Enum):
    """Ternary judge output; the pipeline-level decision is always binary."""

    REAL = "Real"
    FAKE = "Fake"
    INSUFFICIENT = "Insufficient"


class Dimension(str, Enum):
    SENTENCE = "Sentence"
    WORD = "Word"
    GRAMMAR = "Grammar"
    EMOTION = "Emotion"
    INFORMATION_QUALITY = "InformationQuality"
    KNOWLEDGE_CONCORDANCE = "KnowledgeConcordance"
    LOGICAL_INTEGRITY = "LogicalIntegrity"


LINGUIST_DIMENSIONS = (
    Dimension.SENTENCE,
    Dimension.WORD,
    Dimension.GRAMMAR,
    Dimension.EMOTION,
    Dimension.INFORMATION_QUALITY,
)

EXPERT_DIMENSIONS = (
    Dimension.KNOWLEDGE_CONCORDANCE,
    Dimension.LOGICAL_INTEGRITY,
)


class ClaimLabel(str, Enum):
    SUPPORTS = "Supports"
    REFUTES = "Refutes"
    NOT_ENOUGH_INFORMATION = "NotEnoughInformation"


class EntityType(str, Enum):
    PER = "PER"
    ORG = "ORG"
    LOC = "LOC"
    MISC = "MISC"

    @classmethod
    def parse(cls, value: str) -> "EntityType":
        try:
            return cls(value.upper())
        except ValueError:
            return cls.MISC


class ProviderMode(str, Enum):
    LIVE = "Live"
    REPLAY = "Replay"
    MOCK = "Mock"


# ---------------------------------------------------------------------------
# Documents
# ---------------------------------------------------------------------------

@dataclass
class NewsDocument:
    """One news article under test.

    ``body`` is expected to be normalized (NFC, collapsed whitespace) and
    ``sentences`` derived from it; use :meth:`from_text` to build one from
    raw input.
    """

    id: str
    title: str
    body: str
    sentences: list[str] = field(default_factory=list)
    gold_label: Label | None = None

    @classmethod
    def from_text(
        cls,
        doc_id: str,
        title: str,
        body: str,
        gold_label: Label | None = None,
    ) -> "NewsDocument":
        from .salience import normalize_text, split_sentences

        normalized = normalize_text(body)
        return cls(
            id=doc_id,
            title=normalize_text(title),
            body=normalized,
            sentences=split_sentences(normalized),
            gold_label=gold_label,
        )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "body": self.body,
            "sentences": list(self.sentences),
            "gold_label": self.gold_label.value if self.gold_label else None,
        }


# ---------------------------------------------------------------------------
# Entity extraction
# ---------------------------------------------------------------------------

@dataclass
class TokenTag:
    """A single tagged entity token with its character span in the body."""

    token: str
    label: str  # B-/I- prefixed type tag, e.g. "B-PER"
    confidence: float
    start: int
    end: int

    def to_dict(self) -> dict:
        return {
            "token": self.token,
            "label": self.label,
            "confidence": self.confidence,
            "start": self.start,
            "end": self.end,
        }


@dataclass
class EntityUnit:
    """An aggregated entity: consecutive tagged tokens merged into one unit.

    ``confidence`` is the arithmetic mean over all member token confidences,
    across every occurrence merged into this unit.
    """

    surface: str
    entity_type: EntityType
    confidence: float
    sentence_indices: list[int] = field(default_factory=list)
    occurrences: list[tuple[int, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "surface": self.surface,
            "entity_type": self.entity_type.value,
            "confidence": self.confidence,
            "sentence_indices": list(self.sentence_indices),
            "occurrences": [list(span) for span in self.occurrences],
        }


# ---------------------------------------------------------------------------
# Salience and keyword selection
# ---------------------------------------------------------------------------

@dataclass
class SalienceMap:
    """Entity surface -> salience score in [-1, 1]."""

    entries: dict[str, float] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def to_dict(self) -> dict:
        return {"entries": dict(self.entries)}


@dataclass
class SelectionStep:
    """One step of the keyword selection trace.

    The seed step carries no lambda/mmr values; a step with
    ``accepted=False`` records the candidate that triggered the
    relative-change termination rule.
    """

    surface: str
    k: int
    lambda_k: float | None
    mmr: float | None
    accepted: bool

    def to_dict(self) -> dict:
        return {
            "surface": self.surface,
            "k": self.k,
            "lambda_k": self.lambda_k,
            "mmr": self.mmr,
            "accepted": self.accepted,
        }


@dataclass
class KeywordSet:
    keywords: list[str] = field(default_factory=list)
    selection_trace: list[SelectionStep] = field(default_factory=list)

    def __bool__(self) -> bool:
        return bool(self.keywords)

    def to_dict(self) -> dict:
        return {
            "keywords": list(self.keywords),
            "selection_trace": [s.to_dict() for s in self.selection_trace],
        }


# ---------------------------------------------------------------------------
# Retrieval
# ---------------------------------------------------------------------------

@dataclass
class WebQuerySpec:
    """A conjunctive open-web query with vertical and domain exclusions."""

    required_keywords: list[str]
    excluded_verticals: set[str] = field(default_factory=lambda: {"news"})
    excluded_domains: set[str] = field(default_factory=lambda: {"wikipedia.org"})
    max_results: int = 10

    def to_dict(self) -> dict:
        return {
            "required_keywords": list(self.required_keywords),
            "excluded_verticals": sorted(self.excluded_verticals),
            "excluded_domains": sorted(self.excluded_domains),
            "max_results": self.max_results,
        }


@dataclass
class WebEvidence:
    url: str
    title: str
    snippet: str
    summary: str
    rank: int
    source_keywords: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "url": self.url,
            "title": self.title,
            "snippet": self.snippet,
            "summary": self.summary,
            "rank": self.rank,
            "source_keywords": list(self.source_keywords),
        }


@dataclass
class WikiCandidate:
    """One candidate sense returned by a wiki provider lookup."""

    title: str
    description: str
    summary: str


@dataclass
class WikiEntry:
    keyword: str
    chosen_sense_title: str
    summary_3_sentences: str
    candidate_count: int

    def to_dict(self) -> dict:
        return {
            "keyword": self.keyword,
            "chosen_sense_title": self.chosen_sense_title,
            "summary_3_sentences": self.summary_3_sentences,
            "candidate_count": self.candidate_count,
        }


INTERNAL_KNOWLEDGE_NOTE = "supplied implicitly by the language model at analysis time"


@dataclass
class InfoMatrix:
    """Four-quadrant evidence container: the article itself, open-web hits,
    wiki summaries, and a marker for the model's own internal knowledge."""

    in_news: NewsDocument
    out_of_news: list[WebEvidence] = field(default_factory=list)
    wiki_knowledge: list[WikiEntry] = field(default_factory=list)
    internal_knowledge_note: str = INTERNAL_KNOWLEDGE_NOTE

    def to_dict(self) -> dict:
        return {
            "in_news": self.in_news.to_dict(),
            "out_of_news": [e.to_dict() for e in self.out_of_news],
            "wiki_knowledge": [e.to_dict() for e in self.wiki_knowledge],
            "internal_knowledge_note": self.internal_knowledge_note,
        }

    def digest(self) -> str:
        from .serialize import canonical_json, sha256_hex

        return sha256_hex(canonical_json(self.to_dict()))


# ---------------------------------------------------------------------------
# Collaboration agents
# ---------------------------------------------------------------------------

@dataclass
class DimensionSignal:
    dimension: Dimension
    leaning: Label
    rationale: str

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension.value,
            "leaning": self.leaning.value,
            "rationale": self.rationale,
        }


@dataclass
class ClaimSet:
    core: str
    subs: list[str] = field(default_factory=list)

    def all_claims(self) -> list[str]:
        return [self.core, *self.subs]

    def to_dict(self) -> dict:
        return {"core": self.core, "subs": list(self.subs)}


@dataclass
class ClaimVerdict:
    claim: str
    label: ClaimLabel
    reasoning: str
    evidence_quotes: list[str] = field(default_factory=list)
    context_chunk_ids: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "label": self.label.value,
            "reasoning": self.reasoning,
            "evidence_quotes": list(self.evidence_quotes),
            "context_chunk_ids": list(self.context_chunk_ids),
        }


@dataclass
class AgentReport:
    linguist: list[DimensionSignal] = field(default_factory=list)
    expert_role: str = ""
    expert: list[DimensionSignal] = field(default_factory=list)
    claims: ClaimSet | None = None
    verdicts: list[ClaimVerdict] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "linguist": [s.to_dict() for s in self.linguist],
            "expert_role": self.expert_role,
            "expert": [s.to_dict() for s in self.expert],
            "claims": self.claims.to_dict() if self.claims else None,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "flags": list(self.flags),
        }


# ---------------------------------------------------------------------------
# Debate
# ---------------------------------------------------------------------------

@dataclass
class DebateRound:
    pro_argument: str
    con_argument: str
    judge_assessment: Assessment

    def to_dict(self) -> dict:
        return {
            "pro_argument": self.pro_argument,
            "con_argument": self.con_argument,
            "judge_assessment": self.judge_assessment.value,
        }


@dataclass
class DebateTranscript:
    rounds: list[DebateRound] = field(default_factory=list)
    evidence_pool_digest: str = ""
    forced_assessment: Assessment | None = None
    aborted: bool = False

    def to_dict(self) -> dict:
        return {
            "rounds": [r.to_dict() for r in self.rounds],
            "evidence_pool_digest": self.evidence_pool_digest,
            "forced_assessment": (
                self.forced_assessment.value if self.forced_assessment else None
            ),
            "aborted": self.aborted,
        }


# ---------------------------------------------------------------------------
# Verdict
# ---------------------------------------------------------------------------

@dataclass
class Verdict:
    """The final, auditable record for one document.

    Every intermediate stage artifact is attached so the reasoning chain can
    be replayed from the serialized form alone. ``timings`` is wall-clock and
    therefore excluded from the canonical serialization, which must be
    byte-identical across replay runs.
    """

    doc_id: str
    decision: Label
    decision_source: DecisionSource
    transcript: DebateTranscript
    report: AgentReport
    matrix_digest: str
    entities: list[EntityUnit] = field(default_factory=list)
    salience: SalienceMap = field(default_factory=SalienceMap)
    keywords: KeywordSet = field(default_factory=KeywordSet)
    matrix: InfoMatrix | None = None
    flags: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    def to_dict(self, include_timings: bool = False) -> dict:
        data = {
            "doc_id": self.doc_id,
            "decision": self.decision.value,
            "decision_source": self.decision_source.value,
            "transcript": self.transcript.to_dict(),
            "report": self.report.to_dict(),
            "matrix_digest": self.matrix_digest,
            "entities": [u.to_dict() for u in self.entities],
            "salience": self.salience.to_dict(),
            "keywords": self.keywords.to_dict(),
            "matrix": self.matrix.to_dict() if self.matrix else None,
            "flags": list(self.flags),
        }
        if include_timings:
            data["timings"] = dict(self.timings)
        return data

    def to_json(self, include_timings: bool = False) -> str:
        from .serialize import canonical_json

        return canonical_json(self.to_dict(include_timings=include_timings))

    def content_hash(self) -> str:
        from .serialize import sha256_hex

        return sha256_hex(self.to_json())
