"""LDA topic extraction over definition sentences (collapsed Gibbs sampling).

Symmetric priors alpha = 1/K and beta = 0.01; the sampler is seeded and
fully deterministic. Topic-word weights are the normalized assignment
counts, so the degenerate K=1 model reproduces corpus term frequencies
exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .textutil import content_words, default_stopwords

logger = logging.getLogger(__name__)

DEFAULT_BETA = 0.01
DEFAULT_ITERS = 1000


@dataclass
class TopicModel:
    topic_word_weights: np.ndarray  # (K, V), rows sum to 1
    vocabulary: list[str]

    @property
    def k(self) -> int:
        return self.topic_word_weights.shape[0]


def fit_lda(
    definitions: list[str],
    k: int = 5,
    stopwords: frozenset[str] | None = None,
    iters: int = DEFAULT_ITERS,
    seed: int = 0,
) -> TopicModel:
    """Fit a K-topic model to definition sentences.

    Documents that are empty after stopword filtering are dropped (with a
    warning); at least K non-empty documents and a vocabulary of at least
    K types are required.
    """
    if k < 1:
        raise UsageError("k must be >= 1")
    stop = default_stopwords() if stopwords is None else stopwords
    docs = [content_words(d, stop) for d in definitions]
    dropped = sum(1 for d in docs if not d)
    if dropped:
        logger.warning("LDA: dropped %d empty documents after stopword filtering", dropped)
    docs = [d for d in docs if d]
    if len(docs) < k:
        raise UsageError(f"need at least {k} non-empty documents, got {len(docs)}")
    vocabulary = sorted({t for doc in docs for t in doc})
    if len(vocabulary) < k:
        raise UsageError(f"vocabulary ({len(vocabulary)} types) is smaller than k={k}")
    word_id = {w: i for i, w in enumerate(vocabulary)}

    doc_ids: list[int] = []
    word_ids: list[int] = []
    for d, doc in enumerate(docs):
        for tok in doc:
            doc_ids.append(d)
            word_ids.append(word_id[tok])
    n_tokens = len(word_ids)
    n_docs = len(docs)
    v = len(vocabulary)
    alpha = 1.0 / k
    beta = DEFAULT_BETA
    v_beta = v * beta

    rng = np.random.default_rng(seed)
    z = rng.integers(0, k, size=n_tokens).tolist()
    # plain lists in the sweep: the sampler is sequential and K is small,
    # so python-level indexing beats per-token numpy dispatch
    n_kw = [[0] * v for _ in range(k)]
    n_k = [0] * k
    n_dk = [[0] * k for _ in range(n_docs)]
    for t in range(n_tokens):
        n_kw[z[t]][word_ids[t]] += 1
        n_k[z[t]] += 1
        n_dk[doc_ids[t]][z[t]] += 1

    topics = range(k)
    for _ in range(iters):
        uniforms = rng.random(n_tokens)
        for t in range(n_tokens):
            w = word_ids[t]
            d = doc_ids[t]
            old = z[t]
            n_kw[old][w] -= 1
            n_k[old] -= 1
            n_dk[d][old] -= 1
            total = 0.0
            cumulative = [0.0] * k
            row = n_dk[d]
            for topic in topics:
                total += (n_kw[topic][w] + beta) / (n_k[topic] + v_beta) * (row[topic] + alpha)
                cumulative[topic] = total
            target = uniforms[t] * total
            new = 0
            while cumulative[new] < target:
                new += 1
            z[t] = new
            n_kw[new][w] += 1
            n_k[new] += 1
            row[new] += 1

    weights = np.zeros((k, v))
    for topic in topics:
        if n_k[topic] > 0:
            weights[topic] = np.asarray(n_kw[topic], dtype=float) / n_k[topic]
        else:
            weights[topic] = 1.0 / v
    return TopicModel(topic_word_weights=weights, vocabulary=vocabulary)


def top_words(model: TopicModel, topic: int, n: int = 20) -> list[tuple[str, float]]:
    """The n highest-weight words of a topic; ties broken lexicographically."""
    if not 0 <= topic < model.k:
        raise UsageError(f"topic {topic} out of range (k={model.k})")
    if n > len(model.vocabulary):
        raise UsageError(f"asked for {n} words from a {len(model.vocabulary)}-word vocabulary")
    row = model.topic_word_weights[topic]
    ranked = sorted(zip(model.vocabulary, row), key=lambda p: (-p[1], p[0]))
    return [(w, float(wt)) for w, wt in ranked[:n]]
