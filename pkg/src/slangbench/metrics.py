"""Creativity metrics over slang usages and the aggregate statistics engine.

* complexity lives in :mod:`slangbench.morph` (it is a property of the
  segmentation alone); this module houses the three embedding/LM metrics
  and ``summarize``, which turns per-usage values into the report schema
  (mean, sample std, IQR, bias-corrected excess kurtosis).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np
from scipy import stats as sstats

from ._http import post_json
from .corpus import SlangUsage
from .embedding import EmbeddingProvider, l2_distance, mean_vector
from .errors import EndpointError, MetricInputError, UsageError
from .lexicon import Lexicon
from .morph import Segmenter

SCORER_TOKEN_ENV = "SLANGBENCH_CHAT_TOKEN"


def novelty(usage: SlangUsage, lexicon: Lexicon, embedder: EmbeddingProvider) -> float:
    """Distance of a reused term's slang sense from its conventional prototype.

    The prototype is the unweighted mean of the embeddings of every
    conventional gloss of the term; the score is the L2 distance between
    the definition embedding and that prototype.
    """
    entry = lexicon.lookup_exact(usage.term)
    if entry is None:
        raise MetricInputError(f"novelty needs a lexicon entry for {usage.term!r}")
    glosses = entry.glosses()
    if not glosses:
        raise MetricInputError(f"lexicon entry for {usage.term!r} has no glosses")
    vectors = embedder.embed([usage.definition] + glosses)
    prototype = mean_vector(vectors[1:])
    return l2_distance(vectors[0], prototype)


def coherence(usage: SlangUsage, segmenter: Segmenter, lexicon: Lexicon,
              embedder: EmbeddingProvider) -> float:
    """Mean distance between a compound's sense and its constituents' prototypes.

    For each morphological segment, the prototype is the mean embedding of
    all of that constituent's glosses; the score averages the L2 distance
    from the definition embedding to each prototype. Lower = the coined
    compound means something closer to what its parts suggest.
    """
    segments = segmenter.segment(usage.term).segments
    entries = []
    for seg in segments:
        entry = lexicon.lookup_exact(seg)
        if entry is None:
            raise MetricInputError(
                f"coherence needs every constituent in the lexicon; {seg!r} of {usage.term!r} is absent")
        if not entry.glosses():
            raise MetricInputError(f"constituent {seg!r} has no glosses")
        entries.append(entry)
    if len(entries) < 2:
        raise MetricInputError(f"{usage.term!r} is not a compound (single segment)")
    texts = [usage.definition]
    spans = []
    for entry in entries:
        glosses = entry.glosses()
        spans.append((len(texts), len(texts) + len(glosses)))
        texts.extend(glosses)
    vectors = embedder.embed(texts)
    def_vec = vectors[0]
    dists = [l2_distance(def_vec, mean_vector(vectors[a:b])) for a, b in spans]
    return float(np.mean(dists))


# ---------------------------------------------------------------------------
# surprisal


class LmScorer(Protocol):
    """Token-level log-likelihoods of a continuation given a prefix (nats)."""

    def token_logprobs(self, prefix: str, continuation: str) -> list[tuple[str, float]]: ...


class RemoteLmScorer:
    """Completions-style endpoint with echo + logprobs.

    Request: ``{"model", "prompt", "max_tokens": 0, "echo": true,
    "logprobs": true}``; the response's ``tokens`` / ``token_logprobs`` /
    ``text_offset`` arrays cover the whole prompt, and the continuation's
    tokens are recovered as those whose character span overlaps the
    continuation region.
    """

    def __init__(self, url: str, model: str, timeout: float = 120.0,
                 token_env: str = SCORER_TOKEN_ENV):
        self.url = url
        self.model = model
        self.timeout = timeout
        self.token_env = token_env

    def token_logprobs(self, prefix: str, continuation: str) -> list[tuple[str, float]]:
        if not continuation:
            raise UsageError("continuation must be non-empty")
        token = os.environ.get(self.token_env)
        headers = {"Authorization": f"Bearer {token}"} if token else {}
        body = post_json(self.url, {
            "model": self.model,
            "prompt": prefix + continuation,
            "max_tokens": 0,
            "echo": True,
            "logprobs": True,
        }, headers=headers, timeout=self.timeout)
        try:
            lp = body["choices"][0]["logprobs"]
            tokens, logprobs, offsets = lp["tokens"], lp["token_logprobs"], lp["text_offset"]
        except (KeyError, IndexError, TypeError) as exc:
            raise EndpointError(f"scorer response missing logprob fields: {exc}") from exc
        lo, hi = len(prefix), len(prefix) + len(continuation)
        picked: list[tuple[str, float]] = []
        for tok, logprob, off in zip(tokens, logprobs, offsets):
            if off + len(tok) <= lo or off >= hi:
                continue
            if logprob is None:
                raise EndpointError(f"no logprob for token {tok!r} (unconditioned position)")
            picked.append((tok, float(logprob)))
        if not picked:
            raise EndpointError("scorer returned no tokens covering the continuation")
        return picked


def surprisal(usage: SlangUsage, scorer: LmScorer, aggregate: str = "mean") -> float:
    """Negative log-likelihood of the term's tokens given its preceding context.

    Uses the first context containing the term (case-insensitive); the
    text before the first occurrence is the conditioning prefix.
    ``aggregate`` is ``mean`` (per-token average, the default) or ``sum``.
    """
    if aggregate not in ("mean", "sum"):
        raise UsageError(f"unknown aggregation {aggregate!r}")
    needle = usage.term.lower()
    for context in usage.contexts:
        pos = context.lower().find(needle)
        if pos >= 0:
            prefix = context[:pos]
            occurrence = context[pos:pos + len(usage.term)]
            scored = scorer.token_logprobs(prefix, occurrence)
            total = -sum(lp for _, lp in scored)
            return total / len(scored) if aggregate == "mean" else total
    raise MetricInputError(f"term {usage.term!r} does not occur in any of its contexts")


def surprisal_batch(usages: Sequence[SlangUsage], scorer: LmScorer,
                    aggregate: str = "mean", max_concurrency: int = 4) -> list[float]:
    """Surprisal for many usages with a bounded concurrent-request pool."""
    if max_concurrency <= 1:
        return [surprisal(u, scorer, aggregate) for u in usages]
    with ThreadPoolExecutor(max_workers=max_concurrency) as pool:
        return list(pool.map(lambda u: surprisal(u, scorer, aggregate), usages))


# ---------------------------------------------------------------------------
# aggregate statistics


@dataclass(frozen=True)
class SummaryStats:
    """Report-schema aggregate: mean, sample std, IQR, excess kurtosis.

    Kurtosis is the bias-corrected Fisher estimator and is NaN when
    undefined (n < 4 or zero variance).
    """

    n: int
    mean: float
    std: float
    iqr: float
    excess_kurtosis: float


def summarize(values: Sequence[float]) -> SummaryStats:
    arr = np.asarray(list(values), dtype=float)
    n = arr.size
    if n < 2:
        raise UsageError("summarize needs at least two values")
    q1, q3 = np.percentile(arr, [25, 75])  # linear interpolation
    if n >= 4 and arr.var() > 0:
        kurt = float(sstats.kurtosis(arr, fisher=True, bias=False))
    else:
        kurt = math.nan
    return SummaryStats(
        n=n,
        mean=float(arr.mean()),
        std=float(arr.std(ddof=1)),
        iqr=float(q3 - q1),
        excess_kurtosis=kurt,
    )
