"""Run the whole pipeline on one article and watch the adversarial finish:
a pro advocate and a con advocate argue over the shared evidence pool, a
judge reads the full transcript after every round, and the first decisive
assessment becomes the verdict.

Uses the deterministic mock providers, then repeats the run to show the
serialized verdict is byte-identical. Run with:
python3 demos/04_debate_verdict.py
"""

from newsvet.config import PipelineConfig
from newsvet.pipeline import run_pipeline
from newsvet.providers import mock_providers
from newsvet.types import NewsDocument

config = PipelineConfig(embedding_dim=64, seed=7)

doc = NewsDocument.from_text(
    "demo-4",
    "Council approves overnight tram trial",
    "The Halden City Council approved an overnight tram trial on Thursday. "
    "Service on the Blue Line will run hourly between midnight and five. "
    "Transit director Mara Voss called the vote a cautious first step. "
    "The trial is funded through the existing operations budget. "
    "Ridership will be reviewed after three months before any extension.",
)

verdict = run_pipeline(doc, mock_providers(config), config)

# --- The debate transcript ----------------------------------------------------
# Each round is pro argument, then con rebuttal, then a ternary judge
# assessment over the full history so far. Insufficient keeps the debate
# going; at the round cap the judge must pick a side, and if even that
# fails the verdict falls back to the majority of the agents' signals.

print(f"Evidence pool digest: {verdict.transcript.evidence_pool_digest[:16]}...")
for i, round_ in enumerate(verdict.transcript.rounds, start=1):
    print(f"\nRound {i}")
    print(f"  PRO:   {round_.pro_argument[:72]}")
    print(f"  CON:   {round_.con_argument[:72]}")
    print(f"  JUDGE: {round_.judge_assessment.value}")

if verdict.transcript.forced_assessment:
    print(f"\nForced assessment at round cap: {verdict.transcript.forced_assessment.value}")

print(f"\nDecision: {verdict.decision.value} (source: {verdict.decision_source.value})")
if verdict.flags:
    print(f"Flags: {verdict.flags}")

# --- Replay determinism --------------------------------------------------------
# Same document, fresh provider instances, same config: the canonical JSON
# must not move by a single byte. Wall-clock timings are excluded from the
# canonical form for exactly this reason.

again = run_pipeline(doc, mock_providers(config), config)
print(f"\nContent hash, run 1: {verdict.content_hash()}")
print(f"Content hash, run 2: {again.content_hash()}")
assert verdict.to_json() == again.to_json()
print("Serialized verdicts are byte-identical.")
