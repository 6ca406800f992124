"""Dataset ingestion and batch evaluation.

Datasets are CSV or JSONL with id, title, text, label columns. Metrics
follow the fake-as-positive-class convention: accuracy plus F1 for the
Fake class, with zero-denominator precision/recall/F1 defined as 0. Batch
runs isolate per-document failures so one bad row cannot void a benchmark.
"""

from __future__ import annotations

import csv
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .config import PipelineConfig
from .errors import DatasetError, NewsvetError
from .pipeline import run_pipeline
from .types import Label, NewsDocument, Verdict

logger = logging.getLogger(__name__)

_REQUIRED_KEYS = ("id", "title", "text", "label")


def _row_to_doc(row: dict, line: int) -> NewsDocument:
    missing = [key for key in _REQUIRED_KEYS if key not in row or row[key] is None]
    if missing:
        raise ValueError(f"missing keys: {', '.join(missing)}")
    text = str(row["text"]).strip()
    if not text:
        raise ValueError("empty text")
    try:
        gold = Label.parse(str(row["label"]))
    except ValueError as exc:
        raise DatasetError(str(exc), line=line) from exc
    doc_id = str(row["id"]).strip()
    if not doc_id:
        raise ValueError("empty id")
    return NewsDocument.from_text(doc_id, str(row["title"]), text, gold)


def load_dataset(path: str | Path) -> list[NewsDocument]:
    """Load a CSV or JSONL dataset.

    Unknown label values are a hard per-row error with the line number;
    structurally malformed rows are skipped with a warning and a final
    skipped-row count.
    """
    path = Path(path)
    if not path.exists():
        raise DatasetError(f"dataset not found: {path}")
    suffix = path.suffix.lower()
    if suffix == ".csv":
        rows = _read_csv(path)
    elif suffix in (".jsonl", ".ndjson"):
        rows = _read_jsonl(path)
    else:
        raise DatasetError(f"unsupported dataset format: {suffix or '(none)'}")

    docs: list[NewsDocument] = []
    skipped = 0
    seen_ids: set[str] = set()
    for line, row in rows:
        if row is None:
            skipped += 1
            continue
        try:
            doc = _row_to_doc(row, line)
        except DatasetError:
            raise
        except (ValueError, TypeError) as exc:
            logger.warning("line %d: skipping malformed row (%s)", line, exc)
            skipped += 1
            continue
        if doc.id in seen_ids:
            logger.warning("line %d: skipping duplicate id %r", line, doc.id)
            skipped += 1
            continue
        seen_ids.add(doc.id)
        docs.append(doc)
    if skipped:
        logger.warning("skipped %d malformed row(s) in %s", skipped, path)
    return docs


def _read_csv(path: Path):
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        for index, row in enumerate(reader):
            yield index + 2, dict(row)  # +2: header line, 1-based count


def _read_jsonl(path: Path):
    with path.open(encoding="utf-8") as handle:
        for index, raw in enumerate(handle):
            line = index + 1
            if not raw.strip():
                continue
            try:
                row = json.loads(raw)
            except json.JSONDecodeError as exc:
                logger.warning("line %d: invalid JSON (%s)", line, exc)
                yield line, None
                continue
            yield line, row if isinstance(row, dict) else None


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------

@dataclass
class EvalSummary:
    """Fake is the positive class: tp counts documents that are fake and
    were called fake."""

    n: int
    accuracy: float
    f1_fake: float
    confusion: dict[str, int]
    per_doc: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "accuracy": self.accuracy,
            "f1_fake": self.f1_fake,
            "confusion": dict(self.confusion),
            "per_doc": [dict(row) for row in self.per_doc],
        }


def evaluate(pairs: list[tuple[Label, Label]]) -> EvalSummary:
    """Accuracy and fake-class F1 over (gold, predicted) pairs."""
    if not pairs:
        raise ValueError("evaluate requires at least one (gold, predicted) pair")
    tp = fp = tn = fn = 0
    for gold, predicted in pairs:
        if gold is Label.FAKE and predicted is Label.FAKE:
            tp += 1
        elif gold is Label.REAL and predicted is Label.FAKE:
            fp += 1
        elif gold is Label.REAL and predicted is Label.REAL:
            tn += 1
        else:
            fn += 1
    n = len(pairs)
    accuracy = (tp + tn) / n
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return EvalSummary(
        n=n,
        accuracy=accuracy,
        f1_fake=f1,
        confusion={"tp": tp, "fp": fp, "tn": tn, "fn": fn},
    )


# ---------------------------------------------------------------------------
# Batch runs
# ---------------------------------------------------------------------------

@dataclass
class BenchResult:
    summary: EvalSummary
    verdicts: list[Verdict]
    errors: list[dict]

    def to_dict(self) -> dict:
        return {**self.summary.to_dict(), "errors": [dict(e) for e in self.errors]}


def run_bench(
    docs: list[NewsDocument],
    providers,
    config: PipelineConfig | None = None,
    concurrency: int = 1,
) -> BenchResult:
    """Run the pipeline over every document, isolating failures.

    The summary covers only documents that produced a verdict and carry a
    gold label; per_doc rows are ordered by document id regardless of
    completion order.
    """
    config = config or PipelineConfig()

    def job(doc: NewsDocument):
        try:
            return doc, run_pipeline(doc, providers, config), None
        except NewsvetError as exc:
            logger.warning("document %s failed: %s", doc.id, exc)
            return doc, None, str(exc)

    if concurrency > 1 and len(docs) > 1:
        with ThreadPoolExecutor(max_workers=concurrency) as pool:
            results = list(pool.map(job, docs))
    else:
        results = [job(doc) for doc in docs]

    verdicts = [verdict for _, verdict, _ in results if verdict is not None]
    errors = [
        {"id": doc.id, "error": error} for doc, _, error in results if error is not None
    ]

    pairs = []
    rows = []
    for doc, verdict, _error in results:
        if verdict is None:
            continue
        if doc.gold_label is None:
            errors.append({"id": doc.id, "error": "no gold label; excluded from metrics"})
            continue
        pairs.append((doc.gold_label, verdict.decision))
        rows.append(
            {
                "id": doc.id,
                "gold": doc.gold_label.value,
                "predicted": verdict.decision.value,
                "decision_source": verdict.decision_source.value,
            }
        )

    if pairs:
        summary = evaluate(pairs)
    else:
        summary = EvalSummary(
            n=0, accuracy=0.0, f1_fake=0.0, confusion={"tp": 0, "fp": 0, "tn": 0, "fn": 0}
        )
    summary.per_doc = sorted(rows, key=lambda r: r["id"])
    errors.sort(key=lambda e: e["id"])
    return BenchResult(summary=summary, verdicts=verdicts, errors=errors)
