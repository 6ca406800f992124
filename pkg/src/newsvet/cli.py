"""Command-line surface.

Four subcommands cover the pipeline at increasing depth: ``keywords``
(extraction through keyword selection), ``retrieve`` (adds the evidence
matrix), ``detect`` (the full pipeline, one JSONL verdict per document),
and ``bench`` (batch evaluation with accuracy and fake-class F1). Provider
backends are picked with --mode: mock (default, fully offline), replay
(cassette required, network-free), record (captures a cassette), live.

Exit codes: 0 success, 1 run error, 2 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path

from .agents import run_collaboration
from .bench import load_dataset, run_bench
from .config import PipelineConfig
from .entities import aggregate_units, attach_sentence_indices, select_dynamic, tag_tokens
from .errors import NewsvetError
from .keywords import select_keywords
from .pipeline import keyword_contexts, run_pipeline
from .providers import (
    live_providers,
    mock_providers,
    recording_providers,
    replay_providers,
)
from .retrieval import assemble_matrix, build_web_query, fetch_web, fetch_wiki
from .salience import EmbeddingCache, score_all
from .serialize import canonical_json
from .types import Label, NewsDocument

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUN_ERROR = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def load_document(path: str | Path) -> NewsDocument:
    """One article from a JSON file: {id?, title?, body|text, label?}."""
    path = Path(path)
    if not path.exists():
        raise UsageError(f"document not found: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON ({exc})")
    if not isinstance(raw, dict):
        raise UsageError(f"{path}: expected a JSON object")
    body = raw.get("body", raw.get("text", ""))
    if not isinstance(body, str) or not body.strip():
        raise UsageError(f"{path}: missing article body")
    label = raw.get("label")
    try:
        gold = Label.parse(label) if label else None
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}")
    return NewsDocument.from_text(
        str(raw.get("id", path.stem)), str(raw.get("title", "")), body, gold
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newsvet",
        description="Zero-shot news verification: keywords, evidence, agents, debate.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--mode",
        choices=["mock", "replay", "record", "live"],
        default="mock",
        help="provider backend family (default: mock)",
    )
    common.add_argument("--cassette", help="cassette path (required for replay/record)")
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--seed", type=int, help="override the config seed")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--verbose", action="store_true", help="info-level logging")

    sub = parser.add_subparsers(dest="command", required=True)
    p_keywords = sub.add_parser(
        "keywords", parents=[common], help="extract entities and select keywords"
    )
    p_keywords.add_argument("doc", help="article JSON file")
    p_retrieve = sub.add_parser(
        "retrieve", parents=[common], help="build the evidence matrix for one article"
    )
    p_retrieve.add_argument("doc", help="article JSON file")
    p_detect = sub.add_parser(
        "detect", parents=[common], help="full pipeline; one JSONL verdict per document"
    )
    p_detect.add_argument("docs", nargs="+", help="article JSON file(s)")
    p_detect.add_argument(
        "--timings", action="store_true", help="include wall-clock stage timings"
    )
    p_bench = sub.add_parser(
        "bench", parents=[common], help="batch evaluation over a CSV/JSONL dataset"
    )
    p_bench.add_argument("dataset", help="dataset path (.csv or .jsonl)")
    p_bench.add_argument(
        "--concurrency", type=int, default=1, help="documents in flight (default 1)"
    )
    return parser


def resolve_config(args) -> PipelineConfig:
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise UsageError(f"config file not found: {path}")
        try:
            config = PipelineConfig.from_file(path)
        except (ValueError, json.JSONDecodeError) as exc:
            raise UsageError(f"bad config: {exc}")
    else:
        config = PipelineConfig()
    if args.seed is not None:
        config = dataclasses.replace(config, seed=args.seed)
    return config


def resolve_providers(args, config: PipelineConfig):
    """Returns (providers, cassette_store_to_save_or_None)."""
    if args.mode == "mock":
        return mock_providers(config), None
    if args.mode == "live":
        return live_providers(config), None
    if not args.cassette:
        raise UsageError(f"--cassette is required with --mode {args.mode}")
    if args.mode == "replay":
        path = Path(args.cassette)
        if not path.exists():
            raise UsageError(f"cassette not found: {path}")
        return replay_providers(path, config), None
    # record: wrap live endpoints when configured, else the mocks
    inner = live_providers(config) if config.llm_url else mock_providers(config)
    providers, store = recording_providers(args.cassette, inner)
    return providers, store


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def cmd_keywords(args, config: PipelineConfig, providers) -> str:
    doc = load_document(args.doc)
    cache = EmbeddingCache(providers.embed)
    units = attach_sentence_indices(aggregate_units(tag_tokens(doc, providers.ner)), doc)
    entities = select_dynamic(units, config.lambda_init, config.delta_lambda, config.n_min)
    salience = score_all(entities, doc, cache)
    keywords = select_keywords(salience, cache, config.gamma)
    return canonical_json(
        {
            "doc_id": doc.id,
            "entities": [u.to_dict() for u in entities],
            "salience": salience.to_dict(),
            "keywords": keywords.to_dict(),
        }
    )


def cmd_retrieve(args, config: PipelineConfig, providers) -> str:
    doc = load_document(args.doc)
    cache = EmbeddingCache(providers.embed)
    units = attach_sentence_indices(aggregate_units(tag_tokens(doc, providers.ner)), doc)
    entities = select_dynamic(units, config.lambda_init, config.delta_lambda, config.n_min)
    salience = score_all(entities, doc, cache)
    keywords = select_keywords(salience, cache, config.gamma)
    degraded = False
    if keywords:
        spec = build_web_query(keywords, config.max_web_results)
        web, degraded = fetch_web(spec, providers.search)
        wiki = fetch_wiki(
            keywords,
            keyword_contexts(keywords, entities, doc),
            providers.wiki,
            cache,
            config.wiki_summary_sentences,
            config.wiki_parallelism,
        )
    else:
        web, wiki = [], []
    matrix = assemble_matrix(doc, web, wiki)
    return canonical_json(
        {
            "doc_id": doc.id,
            "keywords": keywords.to_dict(),
            "matrix": matrix.to_dict(),
            "matrix_digest": matrix.digest(),
            "web_degraded": degraded,
        }
    )


def cmd_detect(args, config: PipelineConfig, providers) -> str:
    lines = []
    for doc_path in args.docs:
        doc = load_document(doc_path)
        verdict = run_pipeline(doc, providers, config)
        lines.append(verdict.to_json(include_timings=args.timings))
    return "\n".join(lines)


def cmd_bench(args, config: PipelineConfig, providers) -> str:
    docs = load_dataset(args.dataset)
    result = run_bench(docs, providers, config, concurrency=args.concurrency)
    return canonical_json(result.to_dict())


_COMMANDS = {
    "keywords": cmd_keywords,
    "retrieve": cmd_retrieve,
    "detect": cmd_detect,
    "bench": cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = resolve_config(args)
        providers, store = resolve_providers(args, config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        output = _COMMANDS[args.command](args, config, providers)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NewsvetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUN_ERROR
    if store is not None:
        store.save()
    emit(output, args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
