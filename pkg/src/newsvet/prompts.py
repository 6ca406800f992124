"""Prompt templates and prompt-kind detection.

Every chat prompt carries a machine-readable "TASK: <kind>" line in its
system message. Deterministic test backends route on that marker, and the
agent code parses replies against the output format each template pins
down. Bump PROMPT_VERSION when wording changes; recorded cassettes key on
full prompt content, so any edit invalidates them by design.
"""

from __future__ import annotations

import re

PROMPT_VERSION = "1"

TASK_LINGUIST = "linguist-dimension"
TASK_EXPERT_ROLE = "expert-role"
TASK_EXPERT = "expert-dimension"
TASK_CLAIM_EXTRACTION = "claim-extraction"
TASK_VERIFICATION = "claim-verification"
TASK_DEBATE_PRO = "debate-pro"
TASK_DEBATE_CON = "debate-con"
TASK_JUDGE = "judge-assessment"
TASK_JUDGE_FORCED = "judge-forced"

ARTICLE_BEGIN = "=== ARTICLE ==="
ARTICLE_END = "=== END ARTICLE ==="
BACKGROUND_BEGIN = "=== BACKGROUND ==="
BACKGROUND_END = "=== END BACKGROUND ==="
EVIDENCE_BEGIN = "=== EVIDENCE ==="
EVIDENCE_END = "=== END EVIDENCE ==="

_TASK_RE = re.compile(r"^TASK: ([a-z-]+)$", re.MULTILINE)
_CHUNK_RE = re.compile(r"^\[chunk (\d+)\] (.*)$", re.MULTILINE)

REPROMPT_NUDGE = (
    "Your previous reply did not follow the required output format. "
    "Answer again using exactly the labeled lines described in the instructions, "
    "with no surrounding prose."
)

MUST_DECIDE_SUFFIX = (
    "The debate has reached its round limit. You must now decide: "
    "answer ASSESSMENT: Real or ASSESSMENT: Fake. Insufficient is no longer allowed."
)


def classify_prompt(messages: list[dict[str, str]]) -> str:
    """Prompt kind from the TASK marker; 'unknown' when absent."""
    for message in messages:
        match = _TASK_RE.search(message.get("content", ""))
        if match:
            return match.group(1)
    return "unknown"


def _article_block(title: str, body: str) -> str:
    return f"{ARTICLE_BEGIN}\nTitle: {title}\n{body}\n{ARTICLE_END}"


def extract_article(messages: list[dict[str, str]]) -> str:
    """Article block body from a rendered prompt (mock backends slice claims
    and quotes out of it)."""
    for message in messages:
        content = message.get("content", "")
        start = content.find(ARTICLE_BEGIN)
        end = content.find(ARTICLE_END)
        if start != -1 and end != -1:
            return content[start + len(ARTICLE_BEGIN): end].strip()
    return ""


def extract_chunks(messages: list[dict[str, str]]) -> list[tuple[int, str]]:
    """(id, text) pairs from the rendered evidence chunk lines."""
    chunks: list[tuple[int, str]] = []
    for message in messages:
        for match in _CHUNK_RE.finditer(message.get("content", "")):
            chunks.append((int(match.group(1)), match.group(2)))
    return chunks


def render_chunks(chunks) -> str:
    lines = [f"[chunk {c.id}] {c.text}" for c in chunks]
    return f"{EVIDENCE_BEGIN}\n" + "\n".join(lines) + f"\n{EVIDENCE_END}"


def render_wiki_entries(entries) -> str:
    lines = [f"- {e.keyword}: {e.chosen_sense_title}. {e.summary_3_sentences}" for e in entries]
    body = "\n".join(lines) if lines else "(no background entries available)"
    return f"{BACKGROUND_BEGIN}\n{body}\n{BACKGROUND_END}"


# ---------------------------------------------------------------------------
# Analysis prompts
# ---------------------------------------------------------------------------

_DIMENSION_QUESTIONS = {
    "Sentence": "sentence structure: length, completeness, and clause construction",
    "Word": "word choice: loaded, vague, or sensational vocabulary",
    "Grammar": "grammatical quality: agreement, tense consistency, and punctuation",
    "Emotion": "emotional tone: exaggeration, outrage bait, or manufactured urgency",
    "InformationQuality": "information quality: sourcing, specificity, and verifiable detail",
    "KnowledgeConcordance": "concordance with established background knowledge",
    "LogicalIntegrity": "internal logical integrity: consistency of claims, causes, and numbers",
}


def linguist_prompt(title: str, body: str, dimension: str) -> list[dict[str, str]]:
    system = (
        f"TASK: {TASK_LINGUIST}\n"
        "You are a careful linguistic analyst. Judge the article on one dimension only: "
        f"{_DIMENSION_QUESTIONS[dimension]}.\n"
        "Reply with exactly two lines:\n"
        "LEANING: Real or Fake\n"
        "RATIONALE: one short paragraph"
    )
    user = f"Dimension: {dimension}\n{_article_block(title, body)}"
    return [{"role": "system", "content": system}, {"role": "user", "content": user}]


def expert_role_prompt(title: str, body: str) -> list[dict[str, str]]:
    system = (
        f"TASK: {TASK_EXPERT_ROLE}\n"
        "Name the single domain expert best placed to assess this article "
        "(for example: economist, epidemiologist, political scientist).\n"
        "Reply with exactly one line:\n"
        "ROLE: the expert role, two to four words"
    )
    return [
        {"role": "system", "content": system},
        {"role": "user", "content": _article_block(title, body)},
    ]


def expert_prompt(
    title: str, body: str, dimension: str, role: str, wiki_block: str
) -> list[dict[str, str]]:
    system = (
        f"TASK: {TASK_EXPERT}\n"
        f"You are a {role}. Judge the article on one dimension only: "
        f"{_DIMENSION_QUESTIONS[dimension]}. Use the background entries and your own "
        "domain knowledge.\n"
        "Reply with exactly two lines:\n"
        "LEANING: Real or Fake\n"
        "RATIONALE: one short paragraph"
    )
    user = f"Dimension: {dimension}\n{wiki_block}\n{_article_block(title, body)}"
    return [{"role": "system", "content": system}, {"role": "user", "content": user}]


def claim_extraction_prompt(title: str, body: str) -> list[dict[str, str]]:
    system = (
        f"TASK: {TASK_CLAIM_EXTRACTION}\n"
        "Distill the article into verifiable declarative claims: one core claim that "
        "carries the story, then zero or more subordinate claims.\n"
        "Reply with labeled lines only:\n"
        "CORE: the core claim\n"
        "SUB: one subordinate claim (repeat per claim, omit if none)"
    )
    return [
        {"role": "system", "content": system},
        {"role": "user", "content": _article_block(title, body)},
    ]


def verification_prompt(claim: str, chunks) -> list[dict[str, str]]:
    system = (
        f"TASK: {TASK_VERIFICATION}\n"
        "Decide whether the evidence chunks support or refute the claim. Base the "
        "decision strictly on the chunks; if they do not settle it, say so.\n"
        "Reply with labeled lines only:\n"
        "LABEL: Supports, Refutes, or NotEnoughInformation\n"
        "REASONING: one short paragraph\n"
        "QUOTE: a verbatim quote copied from a chunk (repeat per quote, omit if none)"
    )
    user = f"Claim: {claim}\n{render_chunks(chunks)}"
    return [{"role": "system", "content": system}, {"role": "user", "content": user}]


# ---------------------------------------------------------------------------
# Debate prompts
# ---------------------------------------------------------------------------

def debater_prompt(side: str, pool_text: str, opponent_last: str | None) -> list[dict[str, str]]:
    if side == "pro":
        task, stance = TASK_DEBATE_PRO, "argue that the article is authentic (Real)"
    elif side == "con":
        task, stance = TASK_DEBATE_CON, "argue that the article is fabricated (Fake)"
    else:
        raise ValueError(f"unknown debate side: {side!r}")
    system = (
        f"TASK: {task}\n"
        f"You are a debater. Using only the evidence pool, {stance}. "
        "Rebut your opponent's latest argument when one is shown. "
        "Reply with one compact argument paragraph."
    )
    opponent = (
        f"Opponent's latest argument:\n{opponent_last}"
        if opponent_last
        else "Opponent's latest argument: (none yet)"
    )
    user = f"{pool_text}\n\n{opponent}"
    return [{"role": "system", "content": system}, {"role": "user", "content": user}]


def judge_prompt(history_text: str, forced: bool = False) -> list[dict[str, str]]:
    task = TASK_JUDGE_FORCED if forced else TASK_JUDGE
    allowed = "Real or Fake" if forced else "Real, Fake, or Insufficient"
    system = (
        f"TASK: {task}\n"
        "You are the judge of a debate about one news article's authenticity. "
        "Read the full debate history and assess it.\n"
        "Reply with exactly one line:\n"
        f"ASSESSMENT: {allowed}"
    )
    user = history_text if not forced else f"{history_text}\n\n{MUST_DECIDE_SUFFIX}"
    return [{"role": "system", "content": system}, {"role": "user", "content": user}]
