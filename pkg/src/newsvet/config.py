"""Pipeline configuration.

A single flat dataclass carries every tunable. Defaults are usable as-is
with the deterministic providers; live endpoints require the *_url /
*_api_key_env fields. Config files are plain JSON objects; unknown keys
are an error so typos fail loudly instead of silently using a default.
"""

from __future__ import annotations

import dataclasses
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

logger = logging.getLogger(__name__)


@dataclass
class PipelineConfig:
    # Entity selection: threshold starts at lambda_init and relaxes by
    # delta_lambda until at least n_min entities survive (or the floor
    # reaches zero, which admits everything).
    lambda_init: float = 0.8
    delta_lambda: float = 0.1
    n_min: int = 3

    # Keyword selection stop ratio: stop when the best marginal score
    # falls to gamma times the previous accepted one.
    gamma: float = 0.5

    # Evidence retrieval.
    max_web_results: int = 10
    wiki_summary_sentences: int = 3
    retry_budget: int = 2
    retry_backoff: float = 0.5
    wiki_parallelism: int = 4

    # Claim verification context.
    claim_top_k: int = 5
    theta_sim: float = 0.1

    # Debate.
    max_debate_rounds: int = 5

    # Model call behaviour.
    temperature: float = 0.1
    agent_concurrency: int = 1

    # Deterministic providers.
    embedding_dim: int = 384
    seed: int = 0

    # Live endpoints (ignored outside live mode). API keys come from the
    # environment, never from config files.
    ner_url: str = ""
    embedding_url: str = ""
    llm_url: str = ""
    llm_model: str = ""
    search_url: str = ""
    wiki_url: str = "https://en.wikipedia.org/w/api.php"
    ner_api_key_env: str = "NEWSVET_NER_API_KEY"
    embedding_api_key_env: str = "NEWSVET_EMBEDDING_API_KEY"
    llm_api_key_env: str = "NEWSVET_LLM_API_KEY"
    search_api_key_env: str = "NEWSVET_SEARCH_API_KEY"
    timeout_seconds: float = 30.0

    extra: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.lambda_init <= 0 or self.lambda_init > 1:
            raise ValueError("lambda_init must be in (0, 1]")
        if self.delta_lambda <= 0:
            raise ValueError("delta_lambda must be positive")
        if self.n_min < 1:
            raise ValueError("n_min must be at least 1")
        if not 0 < self.gamma < 1:
            raise ValueError("gamma must be in (0, 1)")
        if self.max_web_results < 1:
            raise ValueError("max_web_results must be at least 1")
        if self.max_debate_rounds < 1:
            raise ValueError("max_debate_rounds must be at least 1")
        if self.embedding_dim < 2:
            raise ValueError("embedding_dim must be at least 2")

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(raw, dict):
            raise ValueError(f"config root must be a JSON object, got {type(raw).__name__}")
        known = {f.name for f in dataclasses.fields(cls) if f.name != "extra"}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**raw)

    def to_dict(self) -> dict:
        data = dataclasses.asdict(self)
        data.pop("extra", None)
        return data
