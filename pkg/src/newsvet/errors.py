"""Exception hierarchy shared across the package."""


class NewsvetError(Exception):
    """Base class for all package errors."""


class ProviderError(NewsvetError):
    """An external capability (NER, embeddings, LLM, search, wiki) failed."""

    def __init__(self, provider: str, message: str):
        super().__init__(f"{provider}: {message}")
        self.provider = provider


class CassetteMissError(ProviderError):
    """Replay mode was asked for a request that was never recorded."""

    def __init__(self, provider: str, digest: str):
        super().__init__(provider, f"no recorded response for digest {digest}")
        self.digest = digest


class StageError(NewsvetError):
    """A pipeline stage failed after exhausting its retry budget."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage '{stage}': {message}")
        self.stage = stage


class DegenerateEmbeddingError(NewsvetError):
    """An embedding vector had zero norm and cannot be used for cosine scores."""


class ClaimExtractionError(NewsvetError):
    """The claim extractor produced no parseable core claim after a reprompt."""


class DatasetError(NewsvetError):
    """A benchmark dataset row could not be interpreted."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
