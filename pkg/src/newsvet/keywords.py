"""Keyword selection by salience-calibrated maximal marginal relevance.

Selection starts from the most salient entity and then greedily adds the
candidate with the best marginal score, where the relevance weight decays
with each accepted keyword so diversity matters more as the set grows.
Selection stops when the best marginal score falls to a fixed fraction of
the previous one.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .types import KeywordSet, SalienceMap, SelectionStep
from .vectors import pairwise_cosine

logger = logging.getLogger(__name__)

LAMBDA_FLOOR = 0.1


def lambda_schedule(k: int) -> float:
    """Relevance weight for the k-th selection step: max(0.1, 1.2 - e^(0.2k - 1.5)).

    Decays from about 0.927 at k=1 through about 0.459 at k=6 and clamps to
    0.1 from k=8 on.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return max(LAMBDA_FLOOR, 1.2 - math.exp(0.2 * k - 1.5))


@dataclass
class MmrState:
    """Mutable selection state: chosen surfaces, remaining candidates, the
    pairwise similarity matrix with its surface index, and the previous
    accepted marginal score (initialized to 1.0)."""

    selected: list[str] = field(default_factory=list)
    candidates: set[str] = field(default_factory=set)
    sim_matrix: np.ndarray | None = None
    index: dict[str, int] = field(default_factory=dict)
    mmr_prev: float = 1.0
    k: int = 0

    def similarity(self, a: str, b: str) -> float:
        assert self.sim_matrix is not None
        return float(self.sim_matrix[self.index[a], self.index[b]])


def mmr_score(candidate: str, state: MmrState, salience: SalienceMap, lambda_k: float) -> float:
    """lambda_k * salience(candidate) - (1 - lambda_k) * max similarity to
    any already-selected surface."""
    if candidate not in salience.entries:
        raise KeyError(f"candidate {candidate!r} missing from salience map")
    if not state.selected:
        raise ValueError("mmr_score requires a non-empty selected set")
    redundancy = max(state.similarity(candidate, s) for s in state.selected)
    return lambda_k * salience.entries[candidate] - (1.0 - lambda_k) * redundancy


def _argbest(surfaces, key_fn):
    """Best surface by key_fn with deterministic ties: iterate in ascending
    lexicographic order and keep strict improvements, so the smallest
    surface wins equal keys."""
    best_surface = None
    best_key = None
    for surface in sorted(surfaces):
        key = key_fn(surface)
        if best_key is None or key > best_key:
            best_key = key
            best_surface = surface
    return best_surface, best_key


def select_keywords(salience: SalienceMap, embed, gamma: float = 0.5) -> KeywordSet:
    """Greedy selection over the salience map.

    The seed is the salience argmax. Each later step scores every remaining
    candidate with the decaying relevance weight at k = number already
    selected, accepts the best, and stops once that best score is <=
    gamma * previous accepted score. The stopping candidate is recorded in
    the trace with accepted=False. Ties break toward higher salience, then
    lexicographically smaller surface.
    """
    if not 0 < gamma < 1:
        raise ValueError("gamma must be in (0, 1)")
    if not salience.entries:
        return KeywordSet()

    surfaces = sorted(salience.entries)
    vectors = [np.asarray(embed.embed(s), dtype=float) for s in surfaces]
    state = MmrState(
        candidates=set(surfaces),
        sim_matrix=pairwise_cosine(vectors),
        index={s: i for i, s in enumerate(surfaces)},
    )

    seed, _ = _argbest(state.candidates, lambda s: (salience.entries[s],))
    state.selected.append(seed)
    state.candidates.discard(seed)
    trace = [SelectionStep(surface=seed, k=0, lambda_k=None, mmr=None, accepted=True)]

    while state.candidates:
        state.k = len(state.selected)
        lam = lambda_schedule(state.k)
        best, best_key = _argbest(
            state.candidates,
            lambda s: (mmr_score(s, state, salience, lam), salience.entries[s]),
        )
        best_mmr = best_key[0]
        if best_mmr <= gamma * state.mmr_prev:
            trace.append(
                SelectionStep(surface=best, k=state.k, lambda_k=lam, mmr=best_mmr, accepted=False)
            )
            break
        trace.append(
            SelectionStep(surface=best, k=state.k, lambda_k=lam, mmr=best_mmr, accepted=True)
        )
        state.selected.append(best)
        state.candidates.discard(best)
        state.mmr_prev = best_mmr

    return KeywordSet(keywords=list(state.selected), selection_trace=trace)
