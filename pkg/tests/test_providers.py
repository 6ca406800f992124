"""Tests for provider backends: mocks, cassettes, and live HTTP plumbing."""

import json

import numpy as np
import pytest
import requests

from newsvet.agents import ContextChunk
from newsvet.config import PipelineConfig
from newsvet.errors import CassetteMissError, ProviderError
from newsvet.prompts import (
    classify_prompt,
    judge_prompt,
    linguist_prompt,
    verification_prompt,
)
from newsvet.providers import (
    MOCK_AFFINITY,
    CassetteEmbedding,
    CassetteLlm,
    CassetteStore,
    MockEmbedding,
    MockLlm,
    MockNer,
    MockSearch,
    MockWiki,
    ScriptedLlm,
    mock_embed,
    mock_providers,
    recording_providers,
    replay_providers,
    request_digest,
    stable_hash,
)
from newsvet.providers.live import LiveEmbedding
from newsvet.types import ProviderMode, WebQuerySpec


class TestDigests:
    def test_stable_hash_deterministic(self):
        assert stable_hash("abc") == stable_hash("abc")
        assert stable_hash("abc") != stable_hash("abd")

    def test_request_digest_is_sha256_hex(self):
        digest = request_digest("llm", {"messages": []})
        assert len(digest) == 64
        assert set(digest) <= set("0123456789abcdef")

    def test_digest_ignores_dict_key_order(self):
        assert request_digest("llm", {"a": 1, "b": 2}) == request_digest(
            "llm", {"b": 2, "a": 1}
        )

    def test_digest_separates_providers_and_payloads(self):
        payload = {"text": "x"}
        assert request_digest("ner", payload) != request_digest("wiki", payload)
        assert request_digest("ner", {"text": "x"}) != request_digest("ner", {"text": "y"})


class TestMockEmbedding:
    def test_unit_norm_and_determinism(self):
        a = mock_embed("hello", seed=1, dimension=64)
        b = mock_embed("hello", seed=1, dimension=64)
        assert np.allclose(a, b)
        assert np.linalg.norm(a) == pytest.approx(1.0, abs=1e-9)

    def test_seed_and_text_sensitivity(self):
        base = mock_embed("hello", seed=1, dimension=64)
        assert not np.allclose(base, mock_embed("hello", seed=2, dimension=64))
        assert not np.allclose(base, mock_embed("world", seed=1, dimension=64))

    def test_nonneg_restricts_components(self):
        v = mock_embed("hello", seed=1, dimension=64, nonneg=True)
        assert (v >= 0).all()

    def test_affinity_raises_pairwise_cosine(self):
        plain_a = mock_embed("alpha", seed=5, dimension=256)
        plain_b = mock_embed("beta", seed=5, dimension=256)
        assert abs(float(plain_a @ plain_b)) < 0.5

        mixed_a = mock_embed("alpha", seed=5, dimension=256, affinity=0.9)
        mixed_b = mock_embed("beta", seed=5, dimension=256, affinity=0.9)
        assert float(mixed_a @ mixed_b) > 0.6
        assert np.linalg.norm(mixed_a) == pytest.approx(1.0, abs=1e-9)

    def test_affinity_validation(self):
        with pytest.raises(ValueError):
            mock_embed("x", seed=0, dimension=8, affinity=1.0)
        with pytest.raises(ValueError):
            mock_embed("x", seed=0, dimension=8, affinity=-0.1)

    def test_provider_object_truncation_attribute(self):
        embed = MockEmbedding(dimension=16, seed=0)
        assert embed.dimension == 16
        assert embed.max_input_chars > 0


class TestMockNer:
    TEXT = "Senator Maria Delgado visited Hong Kong. The trip was brief."

    def test_spans_match_source_text(self):
        for tag in MockNer(seed=0).tag(self.TEXT):
            assert self.TEXT[tag["start"]: tag["end"]] == tag["token"]

    def test_bio_structure(self):
        tags = MockNer(seed=0).tag(self.TEXT)
        assert tags, "expected at least one entity run"
        assert tags[0]["label"].startswith("B-")
        for prev, cur in zip(tags, tags[1:]):
            if cur["label"].startswith("I-"):
                assert prev["label"].split("-", 1)[1] == cur["label"].split("-", 1)[1]

    def test_deterministic(self):
        assert MockNer(seed=3).tag(self.TEXT) == MockNer(seed=3).tag(self.TEXT)

    def test_confidences_in_range(self):
        for tag in MockNer(seed=0).tag(self.TEXT):
            assert 0.5 <= tag["confidence"] <= 1.0001

    def test_lowercase_text_yields_nothing(self):
        assert MockNer(seed=0).tag("all lowercase words here.") == []


class TestMockSearch:
    def spec(self, i):
        return WebQuerySpec(required_keywords=[f"kw{i}", "topic"])

    def test_deterministic(self):
        s = MockSearch(seed=2)
        assert s.search(self.spec(1)) == s.search(self.spec(1))

    def test_result_count_bounded(self):
        s = MockSearch(seed=2)
        for i in range(40):
            hits = s.search(self.spec(i))
            assert len(hits) <= self.spec(i).max_results + 3

    def test_contaminated_hosts_appear(self):
        # The mock must sometimes emit hits the post-filter has to drop.
        s = MockSearch(seed=2)
        urls = [h["url"] for i in range(80) for h in s.search(self.spec(i))]
        assert any("wikipedia.org" in u for u in urls)
        assert any("news.google.com" in u for u in urls)


class TestMockWiki:
    def test_deterministic(self):
        w = MockWiki(seed=1)
        assert w.lookup("Delgado") == w.lookup("Delgado")

    def test_coverage_of_branches(self):
        w = MockWiki(seed=1)
        counts = [len(w.lookup(f"keyword{i}")) for i in range(60)]
        assert any(c == 0 for c in counts), "expected some missing pages"
        assert any(c > 1 for c in counts), "expected some multi-sense pages"
        assert all(0 <= c <= 3 for c in counts)

    def test_candidate_shape(self):
        w = MockWiki(seed=1)
        for i in range(30):
            for cand in w.lookup(f"keyword{i}"):
                assert cand["title"]
                assert cand["description"]
                assert cand["summary"]


class TestMockLlm:
    def test_deterministic(self):
        messages = linguist_prompt("T", "Body one. Body two.", "Sentence")
        llm = MockLlm(seed=4)
        assert llm.chat(messages) == llm.chat(messages)

    def test_linguist_reply_parsable(self):
        messages = linguist_prompt("T", "Body one. Body two.", "Emotion")
        reply = MockLlm(seed=4).chat(messages)
        assert reply.startswith("LEANING: ")
        assert reply.split("\n")[0].split(": ")[1] in ("Real", "Fake")

    def test_claim_core_sliced_from_article(self):
        from newsvet.prompts import claim_extraction_prompt

        body = "Officials opened the new span today. Tolls start next week."
        reply = MockLlm(seed=4).chat(claim_extraction_prompt("T", body))
        core = [l for l in reply.splitlines() if l.startswith("CORE: ")][0][6:]
        assert core in body

    def test_verification_quotes_verbatim_or_marked_fabricated(self):
        chunks = [
            ContextChunk(id=0, text="x" * 30 + " unique passage content " + "y" * 30,
                         similarity=0.9)
        ]
        seen_fabricated = False
        seen_verbatim = False
        for seed in range(40):
            reply = MockLlm(seed=seed).chat(verification_prompt(f"claim {seed}", chunks))
            for line in reply.splitlines():
                if not line.startswith("QUOTE: "):
                    continue
                quote = line[7:]
                if quote == "entirely fabricated quotation matching no chunk":
                    seen_fabricated = True
                else:
                    assert quote in chunks[0].text
                    seen_verbatim = True
        assert seen_verbatim

    def test_judge_is_ternary_and_forced_judge_binary(self):
        ternary = set()
        binary = set()
        for seed in range(30):
            llm = MockLlm(seed=seed)
            ternary.add(llm.chat(judge_prompt("Round 1\nPRO: p\nCON: c")).split(": ")[1])
            binary.add(
                llm.chat(judge_prompt("Round 1\nPRO: p\nCON: c", forced=True)).split(": ")[1]
            )
        assert ternary <= {"Real", "Fake", "Insufficient"}
        assert "Insufficient" in ternary
        assert binary <= {"Real", "Fake"}


class TestScriptedLlm:
    def test_by_kind_queue_repeats_last(self):
        llm = ScriptedLlm(by_kind={"judge-assessment": ["a", "b"]})
        messages = judge_prompt("h")
        assert llm.chat(messages) == "a"
        assert llm.chat(messages) == "b"
        assert llm.chat(messages) == "b"

    def test_fifo_fallback_then_exhaustion(self):
        llm = ScriptedLlm(responses=["only"])
        messages = [{"role": "user", "content": "no marker"}]
        assert llm.chat(messages) == "only"
        with pytest.raises(ProviderError):
            llm.chat(messages)

    def test_classify_prompt_unknown_without_marker(self):
        assert classify_prompt([{"role": "user", "content": "hi"}]) == "unknown"


class TestCassetteStore:
    def test_put_get_round_trip_with_copy_isolation(self):
        store = CassetteStore()
        payload = {"text": "x"}
        response = [{"token": "X"}]
        store.put("ner", payload, response)
        response.append({"token": "mutated"})
        first = store.get("ner", payload)
        assert first == [{"token": "X"}]
        first.append({"token": "also mutated"})
        assert store.get("ner", payload) == [{"token": "X"}]

    def test_miss_raises_with_digest(self):
        store = CassetteStore()
        with pytest.raises(CassetteMissError) as exc:
            store.get("ner", {"text": "unseen"})
        assert exc.value.digest == request_digest("ner", {"text": "unseen"})
        assert exc.value.digest in str(exc.value)

    def test_save_load_round_trip(self, tmp_path):
        path = tmp_path / "c.json"
        store = CassetteStore(path, clock=lambda: "2026-01-01T00:00:00+00:00")
        store.put("wiki", {"keyword": "K"}, [{"title": "K"}])
        store.save()
        loaded = CassetteStore.load(path)
        assert loaded.get("wiki", {"keyword": "K"}) == [{"title": "K"}]
        assert loaded.metadata["recorded_at"] == "2026-01-01T00:00:00+00:00"

    def test_version_mismatch_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"version": 99, "entries": {}}), encoding="utf-8")
        with pytest.raises(ProviderError):
            CassetteStore.load(path)

    def test_save_requires_path(self):
        with pytest.raises(ValueError):
            CassetteStore().save()


class CountingInner:
    dimension = 8
    max_input_chars = 100

    def __init__(self):
        self.calls = 0

    def embed(self, text):
        self.calls += 1
        return mock_embed(text, seed=0, dimension=8)


class TestCassetteProviders:
    def test_recording_then_replay_identical(self, tmp_path):
        store = CassetteStore(tmp_path / "c.json")
        inner = CountingInner()
        recorder = CassetteEmbedding(store, inner)
        recorded = recorder.embed("hello")
        assert inner.calls == 1
        # Second identical request is served from the store.
        again = recorder.embed("hello")
        assert inner.calls == 1
        assert np.allclose(recorded, again)
        store.save()

        replay = CassetteEmbedding(CassetteStore.load(tmp_path / "c.json"))
        assert np.allclose(replay.embed("hello"), recorded)
        assert replay.dimension == 8
        assert replay.max_input_chars == 100

    def test_replay_miss_raises_never_fetches(self, tmp_path):
        store = CassetteStore(tmp_path / "c.json")
        replay = CassetteEmbedding(store)
        with pytest.raises(CassetteMissError):
            replay.embed("never recorded")

    def test_replay_dimension_requires_metadata(self):
        replay = CassetteEmbedding(CassetteStore())
        with pytest.raises(ProviderError):
            _ = replay.dimension

    def test_llm_payload_includes_temperature(self):
        store = CassetteStore()

        class OneShot:
            def chat(self, messages, temperature=0.1):
                return f"reply at {temperature}"

        llm = CassetteLlm(store, OneShot())
        messages = [{"role": "user", "content": "q"}]
        assert llm.chat(messages, temperature=0.1) == "reply at 0.1"
        # A different temperature is a different request.
        assert llm.chat(messages, temperature=0.9) == "reply at 0.9"
        assert len(store) == 2


class TestProviderBundles:
    def test_mock_bundle_modes_and_types(self):
        bundle = mock_providers(PipelineConfig(embedding_dim=16, seed=5))
        assert bundle.mode is ProviderMode.MOCK
        assert bundle.embed.dimension == 16
        assert isinstance(bundle.embed, MockEmbedding)
        assert bundle.embed.affinity == MOCK_AFFINITY

    def test_record_then_replay_bundle_round_trip(self, tmp_path):
        path = tmp_path / "session.json"
        config = PipelineConfig(embedding_dim=8, seed=5)
        inner = mock_providers(config)
        wrapped, store = recording_providers(path, inner)
        assert wrapped.mode is ProviderMode.MOCK

        spec = WebQuerySpec(required_keywords=["alpha"])
        live_values = {
            "ner": wrapped.ner.tag("Maria Delgado spoke."),
            "embed": wrapped.embed.embed("alpha").tolist(),
            "llm": wrapped.llm.chat(judge_prompt("Round 1\nPRO: p\nCON: c")),
            "search": wrapped.search.search(spec),
            "wiki": wrapped.wiki.lookup("alpha"),
        }
        store.save()

        replay = replay_providers(path, config)
        assert replay.mode is ProviderMode.REPLAY
        assert replay.ner.tag("Maria Delgado spoke.") == live_values["ner"]
        assert replay.embed.embed("alpha").tolist() == live_values["embed"]
        assert replay.llm.chat(judge_prompt("Round 1\nPRO: p\nCON: c")) == live_values["llm"]
        assert replay.search.search(spec) == live_values["search"]
        assert replay.wiki.lookup("alpha") == live_values["wiki"]
        assert replay.embed.dimension == 8

        with pytest.raises(CassetteMissError):
            replay.wiki.lookup("never-recorded-keyword")

    def test_re_recording_over_existing_cassette_skips_inner(self, tmp_path):
        path = tmp_path / "session.json"
        config = PipelineConfig(embedding_dim=8, seed=5)
        first, store = recording_providers(path, mock_providers(config))
        first.embed.embed("alpha")
        store.save()

        inner = CountingInner()

        class Bundle:
            pass

        second_inner = mock_providers(config)
        second_inner.embed = inner
        second, _store2 = recording_providers(path, second_inner)
        second.embed.embed("alpha")
        assert inner.calls == 0


class FakeResponse:
    def __init__(self, status_code=200, payload=None):
        self.status_code = status_code
        self._payload = payload
        self.text = json.dumps(payload)

    def json(self):
        return self._payload


class TestLiveRetry:
    def config(self, budget=2):
        return PipelineConfig(
            embedding_url="https://embed.test.invalid/api",
            embedding_dim=4,
            retry_budget=budget,
            retry_backoff=0.0,
        )

    def patch_transport(self, monkeypatch, outcomes):
        calls = []

        def fake_request(method, url, **kwargs):
            calls.append((method, url))
            outcome = outcomes[min(len(calls) - 1, len(outcomes) - 1)]
            if isinstance(outcome, Exception):
                raise outcome
            return outcome

        monkeypatch.setattr("newsvet.providers.live.requests.request", fake_request)
        monkeypatch.setattr("newsvet.providers.live.time.sleep", lambda s: None)
        return calls

    def test_transient_errors_retried_until_success(self, monkeypatch):
        ok = FakeResponse(payload={"embedding": [0.1, 0.2, 0.3, 0.4]})
        calls = self.patch_transport(
            monkeypatch,
            [requests.ConnectionError("down"), requests.ConnectionError("down"), ok],
        )
        vector = LiveEmbedding(self.config()).embed("x")
        assert vector == [0.1, 0.2, 0.3, 0.4]
        assert len(calls) == 3

    def test_server_errors_retried(self, monkeypatch):
        ok = FakeResponse(payload={"embedding": [0.1, 0.2, 0.3, 0.4]})
        calls = self.patch_transport(monkeypatch, [FakeResponse(status_code=503), ok])
        LiveEmbedding(self.config()).embed("x")
        assert len(calls) == 2

    def test_client_errors_fail_immediately(self, monkeypatch):
        calls = self.patch_transport(
            monkeypatch, [FakeResponse(status_code=404, payload={"error": "nope"})]
        )
        with pytest.raises(ProviderError):
            LiveEmbedding(self.config()).embed("x")
        assert len(calls) == 1

    def test_budget_exhaustion_raises(self, monkeypatch):
        calls = self.patch_transport(monkeypatch, [requests.ConnectionError("down")])
        with pytest.raises(ProviderError) as exc:
            LiveEmbedding(self.config(budget=1)).embed("x")
        assert len(calls) == 2
        assert "after 2 attempts" in str(exc.value)

    def test_missing_endpoint_rejected_before_transport(self, monkeypatch):
        calls = self.patch_transport(monkeypatch, [])
        config = PipelineConfig(embedding_dim=4)
        with pytest.raises(ProviderError):
            LiveEmbedding(config).embed("x")
        assert calls == []

    def test_wrong_dimension_rejected(self, monkeypatch):
        self.patch_transport(
            monkeypatch, [FakeResponse(payload={"embedding": [0.1, 0.2]})]
        )
        with pytest.raises(ProviderError):
            LiveEmbedding(self.config()).embed("x")
