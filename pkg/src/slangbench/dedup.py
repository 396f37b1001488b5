"""Duplicate filtering for generated entries and sense clustering.

Duplicate rule: an entry is a duplicate only if its term was already
accepted *and* its definition embeds within cosine >= 0.8 of a previously
accepted definition for that term (the threshold itself counts as
duplicate). Distinct senses of the same term are therefore kept.

Sense clustering runs DBSCAN over unit-normalized definition embeddings
with Euclidean distance. Unclustered (noise) points still denote distinct
senses, so each becomes its own singleton cluster. Border points are
attached to the cluster of their nearest core point, which keeps the
partition independent of input order.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .corpus import SlangUsage
from .embedding import EmbeddingProvider, cosine, normalize
from .errors import UsageError
from .textutil import fold

DUPLICATE_COSINE = 0.8
DEFAULT_EPS = 0.5
DEFAULT_MIN_PTS = 5


@dataclass
class DedupState:
    """Accepted (term -> definition embeddings) accumulator."""

    accepted: dict[str, list[np.ndarray]] = field(default_factory=dict)

    def seen_term(self, term: str) -> bool:
        return fold(term) in self.accepted

    def add(self, usage: SlangUsage, embedder: EmbeddingProvider) -> None:
        vec = embedder.embed([usage.definition])[0]
        self.accepted.setdefault(fold(usage.term), []).append(vec)

    def __len__(self) -> int:
        return sum(len(v) for v in self.accepted.values())


def is_duplicate(candidate: SlangUsage, state: DedupState,
                 embedder: EmbeddingProvider, threshold: float = DUPLICATE_COSINE) -> bool:
    """True iff the candidate repeats an accepted term with a near-identical sense."""
    prior = state.accepted.get(fold(candidate.term))
    if not prior:
        return False
    vec = embedder.embed([candidate.definition])[0]
    return any(cosine(vec, p) >= threshold for p in prior)


# ---------------------------------------------------------------------------
# DBSCAN


def dbscan_labels(points: np.ndarray, eps: float, min_pts: int) -> np.ndarray:
    """Cluster labels for ``points``; noise points get -1.

    A point is core when its closed eps-ball (itself included) holds at
    least ``min_pts`` points. Clusters are the connected components of
    core points; a non-core point joins the cluster of its nearest core
    point within eps, or is noise. Exact O(n²) neighbor search, computed
    in row blocks to bound memory.
    """
    pts = np.asarray(points, dtype=float)
    n = pts.shape[0]
    if n == 0:
        return np.empty(0, dtype=int)
    sq_norms = np.einsum("ij,ij->i", pts, pts)
    eps_sq = eps * eps
    block = max(1, min(n, 2_000_000 // max(1, n)))

    neighbor_lists: list[np.ndarray] = []
    neighbor_dists: list[np.ndarray] = []
    for start in range(0, n, block):
        chunk = pts[start:start + block]
        d2 = sq_norms[start:start + block, None] + sq_norms[None, :] - 2.0 * (chunk @ pts.T)
        np.maximum(d2, 0.0, out=d2)
        for row in d2:
            mask = row <= eps_sq
            neighbor_lists.append(np.flatnonzero(mask))
            neighbor_dists.append(row[mask])
    core = np.array([len(nb) >= min_pts for nb in neighbor_lists])

    labels = np.full(n, -1, dtype=int)
    cluster_id = 0
    for seed in range(n):
        if not core[seed] or labels[seed] != -1:
            continue
        # flood fill over core points reachable through core neighborhoods
        labels[seed] = cluster_id
        stack = [seed]
        while stack:
            p = stack.pop()
            for q in neighbor_lists[p]:
                if core[q] and labels[q] == -1:
                    labels[q] = cluster_id
                    stack.append(q)
        cluster_id += 1

    for i in range(n):
        if core[i] or labels[i] != -1:
            continue
        nb = neighbor_lists[i]
        core_mask = core[nb]
        if core_mask.any():
            candidates = nb[core_mask]
            nearest = candidates[np.argmin(neighbor_dists[i][core_mask])]
            labels[i] = labels[nearest]
    return labels


@dataclass
class SenseCluster:
    member_ids: list[int]
    representative: str


def cluster_representative(member_definitions: Sequence[str],
                           definition_counts: Mapping[str, int],
                           rng: random.Random) -> str:
    """Most frequent member definition; ties broken by a seeded uniform draw."""
    if not member_definitions:
        raise UsageError("cluster has no members")
    try:
        best = max(definition_counts[d] for d in member_definitions)
    except KeyError as exc:
        raise UsageError(f"definition_counts does not cover member {exc}") from exc
    tied = sorted({d for d in member_definitions if definition_counts[d] == best})
    if len(tied) == 1:
        return tied[0]
    return rng.choice(tied)


def cluster_senses(
    definitions: Sequence[str],
    embedder: EmbeddingProvider,
    eps: float = DEFAULT_EPS,
    min_pts: int = DEFAULT_MIN_PTS,
    rng: random.Random | None = None,
) -> list[SenseCluster]:
    """DBSCAN partition of definition sentences into sense clusters.

    Clusters are disjoint and cover every input index; noise points come
    back as singleton clusters. Representatives are the most frequent
    definition within each cluster (frequency counted over the input
    list), ties resolved by ``rng``.
    """
    if not definitions:
        raise UsageError("cluster_senses requires at least one definition")
    rng = rng if rng is not None else random.Random(0)
    vectors = np.array([normalize(v) for v in embedder.embed(list(definitions))])
    labels = dbscan_labels(vectors, eps=eps, min_pts=min_pts)

    counts = Counter(definitions)
    grouped: dict[int, list[int]] = {}
    clusters: list[SenseCluster] = []
    order: list[int] = []
    for idx, label in enumerate(labels):
        if label == -1:
            clusters.append(SenseCluster([idx], definitions[idx]))
        elif label not in grouped:
            grouped[label] = [idx]
            order.append(label)
        else:
            grouped[label].append(idx)
    for label in order:
        members = grouped[label]
        rep = cluster_representative([definitions[i] for i in members], counts, rng)
        clusters.append(SenseCluster(members, rep))
    clusters.sort(key=lambda c: c.member_ids[0])
    return clusters
