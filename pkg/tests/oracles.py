"""Independent straight-line oracles.

These deliberately import nothing from the library's selection or
disambiguation code; they are plain-loop transcriptions used to check the
optimized implementations against a second, independently written source
of truth.
"""

from __future__ import annotations

import math


def cosine_oracle(u, v) -> float:
    dot = sum(float(a) * float(b) for a, b in zip(u, v))
    nu = math.sqrt(sum(float(a) ** 2 for a in u))
    nv = math.sqrt(sum(float(b) ** 2 for b in v))
    return dot / (nu * nv)


def lambda_oracle(k: int) -> float:
    return max(0.1, 1.2 - math.exp(0.2 * k - 1.5))


def mmr_select_oracle(saliences: dict, vectors: dict, gamma: float) -> list[str]:
    """Greedy selection: seed at the salience argmax, then repeatedly take
    the best candidate under the decaying relevance weight, stopping when
    the best marginal score falls to gamma times the previous accepted one
    (previous score starts at 1.0). Ties: higher salience, then smaller
    surface."""
    if not saliences:
        return []
    seed = None
    for surface in sorted(saliences):
        if seed is None or saliences[surface] > saliences[seed]:
            seed = surface
    selected = [seed]
    remaining = sorted(s for s in saliences if s != seed)
    mmr_prev = 1.0
    while remaining:
        lam = lambda_oracle(len(selected))
        best = None
        best_mmr = None
        best_sal = None
        for surface in remaining:
            redundancy = max(cosine_oracle(vectors[surface], vectors[s]) for s in selected)
            mmr = lam * saliences[surface] - (1.0 - lam) * redundancy
            better = (
                best is None
                or mmr > best_mmr
                or (mmr == best_mmr and saliences[surface] > best_sal)
            )
            if better:
                best, best_mmr, best_sal = surface, mmr, saliences[surface]
        if best_mmr <= gamma * mmr_prev:
            break
        selected.append(best)
        remaining.remove(best)
        mmr_prev = best_mmr
    return selected


def disambiguate_oracle(keyword: str, ctx_text: str, descriptions: list[str], embed_fn) -> int:
    """Exhaustive argmax over every candidate's substituted context."""
    v_ctx = embed_fn(ctx_text)
    best_index = 0
    best_score = None
    for index, description in enumerate(descriptions):
        if keyword in ctx_text:
            modified = ctx_text.replace(keyword, description)
        else:
            modified = ctx_text + " " + description
        score = cosine_oracle(v_ctx, embed_fn(modified))
        if best_score is None or score > best_score:
            best_score = score
            best_index = index
    return best_index
