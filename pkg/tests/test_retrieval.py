"""Tests for web query construction, host filtering, and wiki sense choice."""

import random

import numpy as np
import pytest

from conftest import DictWiki, ListSearch, VectorEmbedding
from newsvet.providers.mock import MockEmbedding
from newsvet.retrieval import (
    NEWS_AGGREGATOR_HOSTS,
    build_web_query,
    disambiguate,
    fetch_web,
    fetch_wiki,
    truncate_sentences,
)
from newsvet.salience import LocalContext
from newsvet.types import KeywordSet, WikiCandidate
from oracles import disambiguate_oracle


def kwset(*words):
    return KeywordSet(keywords=list(words))


def hit(url, snippet="some text", summary="", title="t"):
    return {"url": url, "title": title, "snippet": snippet, "summary": summary}


class TestBuildWebQuery:
    def test_keywords_required_conjunctively(self):
        spec = build_web_query(kwset("alpha", "beta"))
        assert spec.required_keywords == ["alpha", "beta"]

    def test_duplicates_dropped_keeping_first_position(self):
        spec = build_web_query(kwset("alpha", "beta", "alpha"))
        assert spec.required_keywords == ["alpha", "beta"]

    def test_default_exclusions(self):
        spec = build_web_query(kwset("alpha"))
        assert "news" in spec.excluded_verticals
        assert "wikipedia.org" in spec.excluded_domains

    def test_empty_keywords_rejected(self):
        with pytest.raises(ValueError):
            build_web_query(kwset())

    def test_max_results_carried(self):
        assert build_web_query(kwset("a"), max_results=4).max_results == 4


class TestFetchWeb:
    def test_happy_path_ranks_sequentially(self):
        search = ListSearch([hit(f"https://site{i}.example/a") for i in range(3)])
        evidence, degraded = fetch_web(build_web_query(kwset("a", "b")), search)
        assert not degraded
        assert [e.rank for e in evidence] == [1, 2, 3]
        assert all(e.source_keywords == ["a", "b"] for e in evidence)

    def test_provider_failure_degrades_without_raising(self):
        evidence, degraded = fetch_web(build_web_query(kwset("a")), ListSearch(fail=True))
        assert evidence == []
        assert degraded

    def test_aggregator_hosts_filtered_with_subdomains(self):
        hits = [
            hit("https://news.google.com/articles/x"),
            hit("https://sub.news.google.com/articles/y"),
            hit("https://substack.com/ok"),
        ]
        evidence, degraded = fetch_web(build_web_query(kwset("a")), ListSearch(hits))
        assert not degraded
        assert [e.url for e in evidence] == ["https://substack.com/ok"]

    def test_prefix_lookalike_host_not_filtered(self):
        # "fakeground.news" ends with "round.news" as a string but is not a
        # subdomain of "ground.news".
        hits = [hit("https://fakeground.news/x"), hit("https://ground.news/y")]
        evidence, _ = fetch_web(build_web_query(kwset("a")), ListSearch(hits))
        assert [e.url for e in evidence] == ["https://fakeground.news/x"]

    def test_wikipedia_filtered_via_spec_domains(self):
        hits = [hit("https://en.wikipedia.org/wiki/X"), hit("https://example.com/x")]
        evidence, _ = fetch_web(build_web_query(kwset("a")), ListSearch(hits))
        assert [e.url for e in evidence] == ["https://example.com/x"]

    def test_filter_before_truncate(self):
        # Twelve hits, first two are aggregator-contaminated; the ten clean
        # ones all survive because filtering happens before the cap.
        hits = [hit(f"https://{h}/x") for h in sorted(NEWS_AGGREGATOR_HOSTS)][:2]
        hits += [hit(f"https://clean{i}.example/x") for i in range(12)]
        spec = build_web_query(kwset("a"), max_results=10)
        evidence, _ = fetch_web(spec, ListSearch(hits))
        assert len(evidence) == 10
        assert all("clean" in e.url for e in evidence)
        assert [e.rank for e in evidence] == list(range(1, 11))

    def test_contentless_hits_dropped(self):
        hits = [hit("https://a.example/x", snippet="", summary=""), hit("https://b.example/y")]
        evidence, _ = fetch_web(build_web_query(kwset("a")), ListSearch(hits))
        assert [e.url for e in evidence] == ["https://b.example/y"]

    def test_empty_result_set_is_not_degraded(self):
        evidence, degraded = fetch_web(build_web_query(kwset("a")), ListSearch([]))
        assert evidence == [] and not degraded


def ctx(text):
    return LocalContext(sentence_index=0, text=text)


class TestDisambiguate:
    def test_single_best_sense_wins(self):
        # The "river" description reuses context vocabulary, so replacing the
        # keyword with it should stay closest to the original window.
        context = ctx("The Seine flows through the city.")
        candidates = [
            WikiCandidate(title="Seine (film)", description="a 1951 drama film", summary=""),
            WikiCandidate(
                title="Seine", description="a river that flows through Paris", summary=""
            ),
        ]
        mapping = {
            context.text: [1.0, 0.0, 0.0],
            "The a 1951 drama film flows through the city.": [0.0, 1.0, 0.0],
            "The a river that flows through Paris flows through the city.": [0.9, 0.1, 0.0],
        }
        embed = VectorEmbedding({k: np.asarray(v) / np.linalg.norm(v) for k, v in mapping.items()})
        assert disambiguate("Seine", context, candidates, embed) == 1

    def test_tie_keeps_lowest_index(self):
        context = ctx("Alpha beta gamma.")
        candidates = [
            WikiCandidate(title="A", description="delta", summary=""),
            WikiCandidate(title="B", description="epsilon", summary=""),
        ]
        v = [0.6, 0.8]
        mapping = {
            context.text: [1.0, 0.0],
            "delta beta gamma.": v,
            "epsilon beta gamma.": v,
        }
        embed = VectorEmbedding(mapping)
        assert disambiguate("Alpha", context, candidates, embed) == 0

    def test_absent_keyword_appends_description(self):
        context = ctx("Totally unrelated sentence.")
        candidates = [
            WikiCandidate(title="A", description="first sense", summary=""),
            WikiCandidate(title="B", description="second sense", summary=""),
        ]
        mapping = {
            context.text: [1.0, 0.0],
            context.text + " first sense": [0.0, 1.0],
            context.text + " second sense": [0.8, 0.2],
        }
        embed = VectorEmbedding(mapping)
        assert disambiguate("Ghost", context, candidates, embed) == 1

    def test_replaces_every_occurrence(self):
        context = ctx("Mercury orbits fast. Mercury is hot.")
        candidates = [WikiCandidate(title="Planet", description="the planet", summary="")]
        calls = []

        class Spy:
            dimension = 2

            def embed(self, text):
                calls.append(text)
                return np.asarray([1.0, 0.0])

        disambiguate("Mercury", context, candidates, Spy())
        assert "the planet orbits fast. the planet is hot." in calls

    def test_no_candidates_is_an_error(self):
        with pytest.raises(ValueError):
            disambiguate("x", ctx("x here"), [], VectorEmbedding({"x here": [1.0]}))

    def test_matches_exhaustive_oracle(self):
        embed = MockEmbedding(dimension=16, seed=21, affinity=0.5)
        rng = random.Random(77)
        for trial in range(200):
            keyword = f"term{trial}"
            context = ctx(f"Context about {keyword} and more words {trial}.")
            n = rng.randint(2, 6)
            descriptions = [f"sense {trial}-{i} description" for i in range(n)]
            candidates = [
                WikiCandidate(title=f"T{i}", description=d, summary="")
                for i, d in enumerate(descriptions)
            ]
            expected = disambiguate_oracle(
                keyword, context.text, descriptions, lambda t: embed.embed(t)
            )
            assert disambiguate(keyword, context, candidates, embed) == expected


class TestTruncateSentences:
    def test_keeps_first_three(self):
        text = "One here. Two here. Three here. Four here."
        assert truncate_sentences(text, 3) == "One here. Two here. Three here."

    def test_short_text_unchanged(self):
        assert truncate_sentences("Only one.", 3) == "Only one."

    def test_empty_text(self):
        assert truncate_sentences("", 3) == ""


class TestFetchWiki:
    def wiki_pages(self):
        return {
            "Seine": [
                {"title": "Seine", "description": "a river in France", "summary": "S1. S2. S3. S4."},
            ],
            "Mercury": [
                {"title": "Mercury (planet)", "description": "planet", "summary": "P1. P2."},
                {"title": "Mercury (element)", "description": "metal", "summary": "E1. E2."},
            ],
        }

    def contexts(self):
        return {
            "Seine": ctx("The Seine flooded."),
            "Mercury": ctx("Mercury is visible tonight."),
        }

    def test_summary_truncated_to_three_sentences(self):
        wiki = DictWiki(self.wiki_pages())
        embed = MockEmbedding(dimension=8, seed=2)
        entries = fetch_wiki(kwset("Seine"), self.contexts(), wiki, embed, parallelism=1)
        assert len(entries) == 1
        assert entries[0].summary_3_sentences == "S1. S2. S3."
        assert entries[0].candidate_count == 1

    def test_single_candidate_skips_disambiguation(self):
        wiki = DictWiki(self.wiki_pages())

        class Boom:
            dimension = 2

            def embed(self, text):
                raise AssertionError("embedding should not run for a single sense")

        entries = fetch_wiki(kwset("Seine"), self.contexts(), wiki, Boom(), parallelism=1)
        assert entries[0].chosen_sense_title == "Seine"

    def test_missing_page_omits_keyword(self):
        wiki = DictWiki(self.wiki_pages())
        contexts = dict(self.contexts())
        contexts["Atlantis"] = ctx("Atlantis sank.")
        entries = fetch_wiki(kwset("Seine", "Atlantis"), contexts, wiki, MockEmbedding(8), parallelism=1)
        assert [e.keyword for e in entries] == ["Seine"]

    def test_keyword_without_context_skipped(self):
        wiki = DictWiki(self.wiki_pages())
        entries = fetch_wiki(kwset("Seine", "Mercury"), {"Seine": ctx("The Seine flooded.")},
                             wiki, MockEmbedding(8), parallelism=1)
        assert [e.keyword for e in entries] == ["Seine"]
        assert wiki.lookups == ["Seine"]

    def test_parallel_fetch_preserves_keyword_order(self):
        pages = {f"kw{i}": [{"title": f"T{i}", "description": "d", "summary": "x."}] for i in range(6)}
        wiki = DictWiki(pages)
        contexts = {f"kw{i}": ctx(f"about kw{i}") for i in range(6)}
        entries = fetch_wiki(kwset(*pages), contexts, wiki, MockEmbedding(8), parallelism=4)
        assert [e.keyword for e in entries] == [f"kw{i}" for i in range(6)]

    def test_multi_sense_entry_reports_candidate_count(self):
        wiki = DictWiki(self.wiki_pages())
        embed = MockEmbedding(dimension=8, seed=2)
        entries = fetch_wiki(kwset("Mercury"), self.contexts(), wiki, embed, parallelism=1)
        assert entries[0].candidate_count == 2
        assert entries[0].chosen_sense_title.startswith("Mercury")
