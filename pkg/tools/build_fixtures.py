"""Regenerate the committed replay fixtures.

Writes twelve article files, records one combined cassette by running the
full pipeline over each of them with deterministic offline providers, and
emits the matching config plus two tiny benchmark datasets that reuse the
first six articles (identical title/body, so replay serves them too).

Run from the repository root:

    python3 tools/build_fixtures.py
"""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from newsvet.config import PipelineConfig  # noqa: E402
from newsvet.pipeline import run_pipeline  # noqa: E402
from newsvet.providers import mock_providers, recording_providers  # noqa: E402
from newsvet.types import NewsDocument  # noqa: E402

FIXED_CLOCK = "2026-01-01T00:00:00+00:00"
CONFIG_VALUES = {"embedding_dim": 32, "seed": 7}

ARTICLES = [
    {
        "id": "art01",
        "title": "Delgado unveils bridge repair bill",
        "label": "real",
        "body": (
            "Senator Maria Delgado announced a new infrastructure bill in Sacramento "
            "on Tuesday. The bill allocates twelve billion dollars to bridge repair "
            "across California. Critics from the Pacific Policy Institute called the "
            "figure inflated. Governor Alan Reyes said the proposal would reach the "
            "Assembly floor next month."
        ),
    },
    {
        "id": "art02",
        "title": "Harbor City approves desalination plant",
        "label": "real",
        "body": (
            "The Harbor City council voted to approve a coastal desalination plant "
            "after two years of review. Mayor Elena Vargas said construction would "
            "begin in March. The Coastal Resources Board attached monitoring "
            "conditions to the permit. Local fishing groups asked for quarterly "
            "water quality reports."
        ),
    },
    {
        "id": "art03",
        "title": "Miracle berry cures all known allergies, vendor claims",
        "label": "fake",
        "body": (
            "A street vendor in Riverton claims his imported berries cure every "
            "known allergy within one hour. Customers reportedly threw away their "
            "medication after a single taste. The vendor says the Global Wellness "
            "Institute certified the fruit, though no such body could be reached. "
            "Health officials in Riverton declined to comment on the stampede."
        ),
    },
    {
        "id": "art04",
        "title": "Northfield United signs teenage striker",
        "label": "real",
        "body": (
            "Northfield United confirmed the signing of striker Tomas Eriksen on a "
            "four year contract. Eriksen scored twenty one goals for Falkberg last "
            "season. Manager Ruth Okafor called him the most complete teenage "
            "forward in the league. The transfer fee was not disclosed by either "
            "club."
        ),
    },
    {
        "id": "art05",
        "title": "Moon base secretly operational since 1994, blogger reveals",
        "label": "fake",
        "body": (
            "A blogger known as TruthHammer says a fully staffed lunar base has "
            "operated since 1994. The post claims the Meridian Space Agency ferries "
            "workers monthly aboard unlisted shuttles. It cites a leaked memo that "
            "no archive has ever recorded. Agency spokespeople called the documents "
            "an obvious collage."
        ),
    },
    {
        "id": "art06",
        "title": "Lakeside museum returns bronze artifacts",
        "label": "real",
        "body": (
            "The Lakeside Museum will return forty bronze artifacts to Benin City "
            "next spring. Director Hannah Osei said the decision followed a three "
            "year provenance study. The Royal Heritage Trust will oversee the "
            "transfer. A farewell exhibition opens in November before the pieces "
            "travel."
        ),
    },
    {
        "id": "art07",
        "title": "Drinking seawater boosts memory, viral post insists",
        "label": "fake",
        "body": (
            "A viral post insists that a cup of seawater each morning triples "
            "memory capacity. It quotes a Doctor Felix Marsh of the Oceanic Health "
            "Forum, an organization with no registered address. Followers describe "
            "sudden fluency in languages they never studied. Emergency rooms in "
            "Port Alden report a rise in saltwater poisoning cases."
        ),
    },
    {
        "id": "art08",
        "title": "Transit authority tests battery buses",
        "label": "real",
        "body": (
            "The Metro Transit Authority began testing ten battery electric buses "
            "on the Crosstown line. Engineers will compare range and maintenance "
            "costs against the diesel fleet through winter. Commissioner Dale "
            "Whitfield said early charging data looks promising. Riders noticed "
            "quieter boarding at the Fairview terminal."
        ),
    },
    {
        "id": "art09",
        "title": "Glacier survey records fastest retreat in decades",
        "label": "real",
        "body": (
            "Researchers from the Polar Survey Institute measured record retreat at "
            "the Vostermann Glacier this summer. Lead author Ingrid Dahl said the "
            "terminus withdrew nearly a kilometer in two years. The team published "
            "the measurements in the Journal of Cryosphere Studies. Downstream "
            "towns are updating their flood models."
        ),
    },
    {
        "id": "art10",
        "title": "Phone chargers found to read dreams, forum warns",
        "label": "fake",
        "body": (
            "A late night forum thread warns that fast chargers record dreams "
            "through the fingertips. The author claims the Nocturne Data Group "
            "sells the recordings to advertisers. No engineer consulted could "
            "describe a mechanism for the alleged transfer. The thread still "
            "gathered two million views in a weekend."
        ),
    },
    {
        "id": "art11",
        "title": "Valley orchards expect smaller harvest",
        "label": "real",
        "body": (
            "Growers in the Almera Valley expect a fifteen percent smaller apple "
            "harvest after a late frost. The Agricultural Extension Office "
            "confirmed bud damage across northern orchards. Cooperative manager "
            "Pete Alvarez said prices would rise modestly. Cold storage stocks "
            "from last year will soften the shortfall."
        ),
    },
    {
        "id": "art12",
        "title": "City hall replaced by hologram, caller alleges",
        "label": "fake",
        "body": (
            "A caller told a Radio Carmine talk show that the city hall building "
            "was demolished in secret and replaced with a hologram. Listeners "
            "reported walking through walls, though none produced footage. The "
            "Public Works Department posted maintenance records showing routine "
            "roof repairs. The host apologized but the clip spread anyway."
        ),
    },
]


def write_articles(articles_dir: Path) -> list[NewsDocument]:
    articles_dir.mkdir(parents=True, exist_ok=True)
    docs = []
    for art in ARTICLES:
        path = articles_dir / f"{art['id']}.json"
        path.write_text(json.dumps(art, indent=2, ensure_ascii=True) + "\n", encoding="utf-8")
        docs.append(NewsDocument.from_text(art["id"], art["title"], art["body"]))
    return docs


def write_datasets(datasets_dir: Path) -> None:
    datasets_dir.mkdir(parents=True, exist_ok=True)
    rows = [
        {"id": a["id"], "title": a["title"], "text": a["body"], "label": a["label"]}
        for a in ARTICLES[:6]
    ]
    with (datasets_dir / "tiny.csv").open("w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=["id", "title", "text", "label"])
        writer.writeheader()
        writer.writerows(rows)
    with (datasets_dir / "tiny.jsonl").open("w", encoding="utf-8") as handle:
        for row in rows:
            handle.write(json.dumps(row, ensure_ascii=True) + "\n")


def main() -> None:
    fixtures = ROOT / "tests" / "fixtures"
    cassette_path = fixtures / "cassettes" / "articles.json"
    if cassette_path.exists():
        cassette_path.unlink()

    config = PipelineConfig(**CONFIG_VALUES)
    (fixtures / "replay_config.json").parent.mkdir(parents=True, exist_ok=True)
    (fixtures / "replay_config.json").write_text(
        json.dumps(CONFIG_VALUES, indent=2) + "\n", encoding="utf-8"
    )

    docs = write_articles(fixtures / "articles")
    write_datasets(fixtures / "datasets")

    providers, store = recording_providers(
        cassette_path, mock_providers(config), clock=lambda: FIXED_CLOCK
    )
    for doc in docs:
        verdict = run_pipeline(doc, providers, config)
        print(f"{doc.id}: {verdict.decision.value} via {verdict.decision_source.value}")
    store.save()
    print(f"cassette: {cassette_path} ({len(store)} entries)")


if __name__ == "__main__":
    main()
