"""Score the pipeline over a small labeled corpus and report accuracy and
fake-class F1. Per-document failures are isolated: one bad article becomes
an error row, never a crashed run.

Uses the deterministic mock providers, so the metrics here say nothing
about real detection quality; they exercise the full loop end to end.
Run with: python3 demos/05_benchmark.py
"""

from newsvet.bench import run_bench
from newsvet.config import PipelineConfig
from newsvet.providers import mock_providers
from newsvet.types import Label, NewsDocument

config = PipelineConfig(embedding_dim=64, seed=7)

# Three plausible wire stories and three fabrications, labeled.
ARTICLES = [
    ("b1", "Reservoir levels recover after wet spring",
     "The Ashford Reservoir returned to seasonal norms this week. "
     "Water managers credited steady spring rainfall across the basin. "
     "Restrictions on lawn watering are expected to lift by July.", Label.REAL),
    ("b2", "Clinic expands weekend vaccination hours",
     "The Dunmore Clinic will open Saturdays through the summer. "
     "Nurse coordinator Alice Prem said demand doubled since May. "
     "Walk-ins are accepted until four each afternoon.", Label.REAL),
    ("b3", "Library digitizes century-old harbor logs",
     "The Calder Library finished scanning its harbor ledgers this month. "
     "Archivist Owen Tully said the logs cover ninety years of arrivals. "
     "The collection goes online free of charge in August.", Label.REAL),
    ("b4", "Dentist discovers teeth regrow overnight with common spice",
     "A retired dentist in Brindle claims cinnamon regrows adult teeth overnight. "
     "Dental associations have refused to comment on the stunning cure. "
     "He now sells a patented cinnamon paste for nightly use.", Label.FAKE),
    ("b5", "City secretly replaced pigeons with surveillance drones",
     "An anonymous memo says every pigeon downtown is a government drone. "
     "The memo claims the birds recharge on power lines at night. "
     "Officials deny the program, which insiders call proof of its existence.", Label.FAKE),
    ("b6", "Lottery numbers predicted by houseplant for third week",
     "A Halden man says his fern has predicted three straight lottery draws. "
     "He reads the winning numbers from the angle of new fronds. "
     "Statisticians were reportedly baffled and unavailable.", Label.FAKE),
]

docs = [
    NewsDocument.from_text(doc_id, title, body, gold_label=label)
    for doc_id, title, body, label in ARTICLES
]

result = run_bench(docs, mock_providers(config), config, concurrency=2)

print("Per-document results:")
for row in result.summary.per_doc:
    print(f"  {row['id']}: gold={row['gold']:4s} predicted={row['predicted']:4s} "
          f"source={row['decision_source']}")

for err in result.errors:
    print(f"  error on {err['id']}: {err['error']}")

s = result.summary
print(f"\nScored documents: {s.n}")
print(f"Accuracy: {s.accuracy:.4f}")
print(f"F1 (fake as positive class): {s.f1_fake:.4f}")
print(f"Confusion: {s.confusion}")
