"""Adversarial debate over the pooled evidence, with a ternary judge and a
bounded-round fallback.

Each round the pro side argues first (seeing only the opponent's latest
argument), the con side rebuts, and the judge assesses the full growing
history. The loop ends early on a decisive assessment; at the round cap a
must-decide judge call is issued, and if even that stays indecisive the
decision falls back to a majority vote over the analysis signals. Every
path ends in a binary decision.
"""

from __future__ import annotations

import logging

from .errors import ProviderError
from .prompts import debater_prompt, judge_prompt
from .agents import parse_fields
from .serialize import canonical_json, sha256_hex
from .types import (
    AgentReport,
    Assessment,
    ClaimLabel,
    DebateRound,
    DebateTranscript,
    DecisionSource,
    InfoMatrix,
    Label,
)

logger = logging.getLogger(__name__)

FLAG_ABORTED = "debate:aborted"
FLAG_NO_SIGNALS = "fallback:no-signals"


def render_evidence_pool(matrix: InfoMatrix, report: AgentReport) -> str:
    """Deterministic text rendering of everything the debaters may use: the
    four evidence quadrants plus the analysis-stage findings."""
    doc = matrix.in_news
    lines = [
        "=== EVIDENCE POOL ===",
        f"[in-news] Title: {doc.title}",
        f"[in-news] {doc.body}",
    ]
    for item in matrix.out_of_news:
        lines.append(f"[web {item.rank}] {item.title} | {item.snippet} {item.summary}")
    for entry in matrix.wiki_knowledge:
        lines.append(
            f"[wiki] {entry.keyword} -> {entry.chosen_sense_title}: {entry.summary_3_sentences}"
        )
    lines.append(f"[internal] {matrix.internal_knowledge_note}")
    for signal in report.linguist:
        lines.append(
            f"[linguist {signal.dimension.value}] leans {signal.leaning.value}: {signal.rationale}"
        )
    for signal in report.expert:
        lines.append(
            f"[expert({report.expert_role}) {signal.dimension.value}] "
            f"leans {signal.leaning.value}: {signal.rationale}"
        )
    if report.claims is not None:
        lines.append(f"[claim core] {report.claims.core}")
        lines.extend(f"[claim sub] {sub}" for sub in report.claims.subs)
    for verdict in report.verdicts:
        quotes = " | ".join(verdict.evidence_quotes)
        lines.append(
            f"[verification] {verdict.label.value}: {verdict.claim}"
            + (f" (quotes: {quotes})" if quotes else "")
        )
    lines.append("=== END EVIDENCE POOL ===")
    return "\n".join(lines)


def render_history(rounds: list[DebateRound]) -> str:
    """Growing debate history; rendering the first n rounds is always a
    prefix of rendering the first n+1, which gives the judge-prompt
    monotonicity the transcript contract requires."""
    blocks = [
        f"Round {i + 1}\nPRO: {r.pro_argument}\nCON: {r.con_argument}"
        for i, r in enumerate(rounds)
    ]
    return "\n\n".join(blocks)


_ASSESSMENT_VALUES = {
    "real": Assessment.REAL,
    "fake": Assessment.FAKE,
    "insufficient": Assessment.INSUFFICIENT,
}


def _parse_assessment(text: str) -> Assessment | None:
    for value in parse_fields(text).get("ASSESSMENT", []):
        parsed = _ASSESSMENT_VALUES.get(value.strip().lower())
        if parsed is not None:
            return parsed
    return None


def judge_assess(
    rounds: list[DebateRound], judge, temperature: float = 0.1, forced: bool = False
) -> Assessment:
    """Ternary assessment of the full history; unparsable output after one
    reprompt counts as Insufficient."""
    if not rounds:
        raise ValueError("judge requires at least one completed round")
    messages = judge_prompt(render_history(rounds), forced=forced)
    reply = judge.chat(messages, temperature=temperature)
    parsed = _parse_assessment(reply)
    if parsed is None:
        retry = messages + [
            {"role": "assistant", "content": reply},
            {"role": "user", "content": "Answer with the single required ASSESSMENT line only."},
        ]
        parsed = _parse_assessment(judge.chat(retry, temperature=temperature))
    return parsed if parsed is not None else Assessment.INSUFFICIENT


def usable_signals(report: AgentReport) -> list[Label]:
    """Binary signals for the fallback vote: every dimension leaning plus
    claim verdicts mapped Supports to Real and Refutes to Fake."""
    signals = [s.leaning for s in report.linguist]
    signals += [s.leaning for s in report.expert]
    for verdict in report.verdicts:
        if verdict.label is ClaimLabel.SUPPORTS:
            signals.append(Label.REAL)
        elif verdict.label is ClaimLabel.REFUTES:
            signals.append(Label.FAKE)
    return signals


def fallback_majority(report: AgentReport) -> Label:
    """Majority over the usable signals; ties and empty signal sets resolve
    to Fake (the costlier class to miss)."""
    signals = usable_signals(report)
    real = sum(1 for s in signals if s is Label.REAL)
    fake = len(signals) - real
    return Label.REAL if real > fake else Label.FAKE


def run_debate(
    pool_text: str,
    report: AgentReport,
    llm=None,
    *,
    pro=None,
    con=None,
    judge=None,
    r_max: int = 5,
    temperature: float = 0.1,
) -> tuple[Label, DecisionSource, DebateTranscript, list[str]]:
    """The full debate loop. ``llm`` plays every role unless a side-specific
    provider is given. Returns (decision, source, transcript, flags)."""
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    pro = pro if pro is not None else llm
    con = con if con is not None else llm
    judge = judge if judge is not None else llm
    if pro is None or con is None or judge is None:
        raise ValueError("a provider is required for each debate role")

    transcript = DebateTranscript(evidence_pool_digest=sha256_hex(canonical_json(pool_text)))
    flags: list[str] = []
    con_last: str | None = None

    def abort() -> tuple[Label, DecisionSource, DebateTranscript, list[str]]:
        transcript.aborted = True
        flags.append(FLAG_ABORTED)
        signals = usable_signals(report)
        if not signals:
            flags.append(FLAG_NO_SIGNALS)
        return fallback_majority(report), DecisionSource.FALLBACK_MAJORITY, transcript, flags

    for _round in range(r_max):
        try:
            pro_argument = pro.chat(
                debater_prompt("pro", pool_text, con_last), temperature=temperature
            )
            con_argument = con.chat(
                debater_prompt("con", pool_text, pro_argument), temperature=temperature
            )
        except ProviderError as exc:
            logger.warning("debater failed mid-round: %s", exc)
            return abort()
        con_last = con_argument
        round_record = DebateRound(
            pro_argument=pro_argument,
            con_argument=con_argument,
            judge_assessment=Assessment.INSUFFICIENT,
        )
        transcript.rounds.append(round_record)
        try:
            assessment = judge_assess(transcript.rounds, judge, temperature)
        except ProviderError as exc:
            logger.warning("judge failed: %s", exc)
            return abort()
        round_record.judge_assessment = assessment
        if assessment is not Assessment.INSUFFICIENT:
            return Label(assessment.value), DecisionSource.JUDGE, transcript, flags

    try:
        forced = judge_assess(transcript.rounds, judge, temperature, forced=True)
    except ProviderError as exc:
        logger.warning("forced judge call failed: %s", exc)
        return abort()
    transcript.forced_assessment = forced
    if forced is not Assessment.INSUFFICIENT:
        return Label(forced.value), DecisionSource.FORCED_JUDGE, transcript, flags

    signals = usable_signals(report)
    if not signals:
        flags.append(FLAG_NO_SIGNALS)
    return fallback_majority(report), DecisionSource.FALLBACK_MAJORITY, transcript, flags
