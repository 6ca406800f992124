"""newsvet: training-free news verification.

One document flows through six stages: named-entity extraction with a
relaxing confidence threshold, hierarchical salience scoring, decaying-MMR
keyword selection, dual-source evidence retrieval into a four-quadrant
matrix, multi-agent analysis (linguist, domain expert, grounded claim
verification), and an adversarial debate whose judge issues the binary
verdict. All external capabilities sit behind swappable providers with
live, mock, and record/replay backends, so full runs are reproducible
offline.
"""

from .agents import (
    ContextChunk,
    build_claim_context,
    extract_claims,
    expert_analyze,
    linguist_analyze,
    run_collaboration,
    verify_claim,
)
from .bench import BenchResult, EvalSummary, evaluate, load_dataset, run_bench
from .config import PipelineConfig
from .debate import (
    fallback_majority,
    judge_assess,
    render_evidence_pool,
    render_history,
    run_debate,
    usable_signals,
)
from .entities import aggregate_units, attach_sentence_indices, select_dynamic, tag_tokens
from .errors import (
    CassetteMissError,
    ClaimExtractionError,
    DatasetError,
    DegenerateEmbeddingError,
    NewsvetError,
    ProviderError,
    StageError,
)
from .keywords import MmrState, lambda_schedule, mmr_score, select_keywords
from .pipeline import run_pipeline
from .providers import (
    CassetteStore,
    ProviderSet,
    live_providers,
    mock_providers,
    recording_providers,
    replay_providers,
)
from .retrieval import (
    assemble_matrix,
    build_web_query,
    disambiguate,
    fetch_web,
    fetch_wiki,
)
from .salience import (
    EmbeddingCache,
    LocalContext,
    hierarchical_salience,
    local_context,
    normalize_text,
    score_all,
    split_sentences,
)
from .serialize import canonical_json, sha256_hex
from .types import (
    AgentReport,
    Assessment,
    ClaimLabel,
    ClaimSet,
    ClaimVerdict,
    DebateRound,
    DebateTranscript,
    DecisionSource,
    Dimension,
    DimensionSignal,
    EntityType,
    EntityUnit,
    InfoMatrix,
    KeywordSet,
    Label,
    NewsDocument,
    ProviderMode,
    SalienceMap,
    SelectionStep,
    TokenTag,
    Verdict,
    WebEvidence,
    WebQuerySpec,
    WikiEntry,
)
from .vectors import cosine, pairwise_cosine

__version__ = "0.1.0"

__all__ = [
    "AgentReport",
    "Assessment",
    "BenchResult",
    "CassetteMissError",
    "CassetteStore",
    "ClaimExtractionError",
    "ClaimLabel",
    "ClaimSet",
    "ClaimVerdict",
    "ContextChunk",
    "DatasetError",
    "DebateRound",
    "DebateTranscript",
    "DecisionSource",
    "DegenerateEmbeddingError",
    "Dimension",
    "DimensionSignal",
    "EmbeddingCache",
    "EntityType",
    "EntityUnit",
    "EvalSummary",
    "InfoMatrix",
    "KeywordSet",
    "Label",
    "LocalContext",
    "MmrState",
    "NewsDocument",
    "NewsvetError",
    "PipelineConfig",
    "ProviderError",
    "ProviderMode",
    "ProviderSet",
    "SalienceMap",
    "SelectionStep",
    "StageError",
    "TokenTag",
    "Verdict",
    "WebEvidence",
    "WebQuerySpec",
    "WikiEntry",
    "aggregate_units",
    "assemble_matrix",
    "attach_sentence_indices",
    "build_claim_context",
    "build_web_query",
    "canonical_json",
    "cosine",
    "disambiguate",
    "evaluate",
    "expert_analyze",
    "extract_claims",
    "fallback_majority",
    "fetch_web",
    "fetch_wiki",
    "hierarchical_salience",
    "judge_assess",
    "lambda_schedule",
    "linguist_analyze",
    "live_providers",
    "load_dataset",
    "local_context",
    "mmr_score",
    "mock_providers",
    "normalize_text",
    "pairwise_cosine",
    "recording_providers",
    "render_evidence_pool",
    "render_history",
    "replay_providers",
    "run_bench",
    "run_collaboration",
    "run_debate",
    "run_pipeline",
    "score_all",
    "select_dynamic",
    "select_keywords",
    "sha256_hex",
    "split_sentences",
    "tag_tokens",
    "usable_signals",
    "verify_claim",
]
